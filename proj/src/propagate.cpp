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

#include "lrgate/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lrgate/error.hpp"

namespace lrgate {

double Propagator::max_unitarity_defect() const {
    double worst = 0.0;
    for (const Matrix& u : unitaries) worst = std::max(worst, unitarity_defect(u));
    return worst;
}

namespace {

// exp(-i w t sz/2) on spin 1
Matrix frame_rotation(double angle, std::size_t dim) {
    const cplx down = std::exp(0.5 * kI * angle);
    const cplx up = std::conj(down);
    if (dim == 2) {
        const cplx d[] = {up, down};
        return Matrix::diagonal(d);
    }
    const cplx d[] = {up, up, down, down};
    return Matrix::diagonal(d);
}

Matrix rotating_frame_hamiltonian(const SingleQubitDrive& d) {
    return hamiltonian_single(d, 0.0) - (0.5 * d.omega) * pauli::z();
}

template <class Drive>
Propagator sample(const Drive& d, const std::vector<double>& grid) {
    Propagator p;
    p.method = PropagatorMethod::Analytic;
    p.times = grid;
    p.unitaries.reserve(grid.size());
    for (double t : grid) p.unitaries.push_back(analytic_propagator(d, t));
    return p;
}

int round_up(int value, int multiple) { return ((value + multiple - 1) / multiple) * multiple; }

}  // namespace

Matrix analytic_propagator(const SingleQubitDrive& d, double t) {
    if (t == 0.0) return Matrix::identity(2);
    return frame_rotation(d.omega * t, 2) * expm_i_hermitian(rotating_frame_hamiltonian(d), t);
}

Matrix analytic_propagator(const TwoQubitDrive& d, double t) {
    if (t == 0.0) return Matrix::identity(4);
    const Matrix u1 = expm_i_hermitian(rotating_frame_hamiltonian(d.block_drive(true)), t);
    const Matrix u2 = expm_i_hermitian(rotating_frame_hamiltonian(d.block_drive(false)), t);
    return frame_rotation(d.omega * t, 4) * direct_sum(u1, u2, kQubit2Blocks);
}

Propagator analytic_propagator(const SingleQubitDrive& d, const std::vector<double>& grid) { return sample(d, grid); }

Propagator analytic_propagator(const TwoQubitDrive& d, const std::vector<double>& grid) { return sample(d, grid); }

Propagator numeric_propagator(const MatrixFn& h_of_t, double duration, int steps, int record_stride) {
    if (steps < 1000) throw std::invalid_argument("numeric_propagator: steps must be >= 1000");
    if (record_stride < 1 || steps % record_stride != 0) {
        throw std::invalid_argument("numeric_propagator: steps must be a multiple of record_stride");
    }
    const double h = duration / steps;
    const std::size_t dim = h_of_t(0.0).dim();

    Propagator p;
    p.method = PropagatorMethod::Numeric;
    p.times = uniform_grid(duration, steps / record_stride);
    p.unitaries.reserve(p.times.size());
    Matrix u = Matrix::identity(dim);
    p.unitaries.push_back(u);
    for (int k = 0; k < steps; ++k) {
        const double mid = (static_cast<double>(k) + 0.5) * h;
        u = expm_i_hermitian(h_of_t(mid), h) * u;
        if ((k + 1) % record_stride == 0) p.unitaries.push_back(u);
    }
    return p;
}

std::vector<double> GateResult::eigenphases() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < invariant_basis.dim(); ++i) out.push_back(std::arg(invariant_basis(i, i)));
    return out;
}

GateResult cyclic_gate(const Matrix& cycle_unitary, const InvariantFrame& frame, int cycles) {
    if (cycles < 1) throw std::invalid_argument("cyclic_gate: cycles must be >= 1");
    if (frame.periodicity_defect() > 1e-10) {
        throw Error(ErrorCode::GaugeDiscontinuity, "frame is not periodic");
    }
    GateResult g;
    g.cycles = cycles;
    g.eigenvalues = frame.eigenvalues();
    g.computational_basis = matrix_power(cycle_unitary, cycles);
    const Matrix v = frame.initial_basis();
    g.invariant_basis = v.adjoint() * g.computational_basis * v;
    g.diagnostics.unitarity_defect = unitarity_defect(g.computational_basis);
    g.diagnostics.offdiag_leakage = offdiag_max(g.invariant_basis);
    g.diagnostics.block_leakage = g.computational_basis.dim() == 4 ? block_leakage(g.computational_basis) : 0.0;
    return g;
}

GateResult cyclic_gate(const Propagator& cycle, const InvariantFrame& frame, int cycles) {
    if (std::abs(cycle.times.back() - frame.period()) > 1e-12 * frame.period()) {
        throw Error(ErrorCode::GridMismatch, "propagator does not end at the frame period");
    }
    return cyclic_gate(cycle.final(), frame, cycles);
}

double cycle_phase(double eigenvalue, double omega) { return kPi * (1.0 - 2.0 * eigenvalue / omega); }

Matrix gate_formula(double chi, double gamma) {
    const double c2 = std::pow(std::cos(0.5 * chi), 2);
    const double s2 = std::pow(std::sin(0.5 * chi), 2);
    const cplx ep = std::exp(kI * gamma), em = std::exp(-kI * gamma);
    const cplx off = kI * std::sin(chi) * std::sin(gamma);
    return Matrix{{ep * c2 + em * s2, off}, {off, ep * s2 + em * c2}};
}

Matrix computational_gate_formula(const SingleQubitDrive& d) {
    return gate_formula(mixing_angles(d).chi, kPi * (1.0 - d.lambda() / d.omega));
}

namespace {

template <class Drive>
CycleSimulation simulate(const Drive& d, const SimulationOptions& options) {
    const double period = d.period();
    InvariantFrame frame = eigenframe(invariant_fn(d), period, options.grid_points);
    MatrixFn ham = hamiltonian_fn(d);
    Propagator prop;
    if (options.method == PropagatorMethod::Analytic) {
        prop = analytic_propagator(d, frame.times());
    } else {
        const int steps = round_up(std::max(options.steps, 1000), options.grid_points);
        prop = numeric_propagator(ham, period, steps, steps / options.grid_points);
    }
    return CycleSimulation{std::move(frame), std::move(prop), std::move(ham)};
}

}  // namespace

CycleSimulation simulate_cycle(const SingleQubitDrive& d, const SimulationOptions& options) {
    return simulate(d, options);
}

CycleSimulation simulate_cycle(const TwoQubitDrive& d, const SimulationOptions& options) {
    return simulate(d, options);
}

}  // namespace lrgate
