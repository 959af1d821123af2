// Copyright 2026 The lrgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "lrgate/qops.hpp"

namespace lrgate {

enum class PropagatorMethod { Analytic, Numeric };

/// U(t, 0) sampled on a time grid. unitaries[0] is the identity.
struct Propagator {
    std::vector<double> times;
    std::vector<Matrix> unitaries;
    PropagatorMethod method = PropagatorMethod::Analytic;

    std::size_t size() const { return times.size(); }
    const Matrix& final() const { return unitaries.back(); }
    double max_unitarity_defect() const;
};

/// Uniform grid with `intervals` steps on [0, period]; intervals + 1 nodes.
std::vector<double> uniform_grid(double period, int intervals);

}  // namespace lrgate
