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

#include "lrgate/invariant.hpp"
#include "lrgate/propagator.hpp"
#include "lrgate/qops.hpp"

namespace lrgate {

/// U(t,0) = exp(-i w t sz/2) exp(-i H0 t) with H0 = H(0) - w sz/2.
Matrix analytic_propagator(const SingleQubitDrive& d, double t);

/// Same construction for the two-spin drive, rotating spin 1 only. The
/// rotating-frame exponential is assembled from the two 2x2 blocks.
Matrix analytic_propagator(const TwoQubitDrive& d, double t);

Propagator analytic_propagator(const SingleQubitDrive& d, const std::vector<double>& grid);
Propagator analytic_propagator(const TwoQubitDrive& d, const std::vector<double>& grid);

/// Midpoint exponential stepping U_{k+1} = exp(-i H(t_k + h/2) h) U_k on
/// [0, duration], second order in h, unitary to roundoff. Every
/// record_stride-th step is stored, so the returned grid has
/// steps/record_stride + 1 nodes. steps must be >= 1000 and a multiple of
/// record_stride. Throws NonHermitianInput.
Propagator numeric_propagator(const MatrixFn& h_of_t, double duration, int steps, int record_stride = 1);

struct GateDiagnostics {
    double unitarity_defect = 0.0;
    double offdiag_leakage = 0.0;  // invariant basis
    double block_leakage = 0.0;    // computational basis, 4x4 only
};

struct GateResult {
    Matrix invariant_basis;
    Matrix computational_basis;
    int cycles = 1;
    std::vector<double> eigenvalues;  // invariant level of each diagonal entry
    GateDiagnostics diagnostics;

    /// arg of the invariant-basis diagonal, in (-pi, pi].
    std::vector<double> eigenphases() const;
};

/// Gate after m cycles given the one-cycle unitary U(period) in the
/// computational basis. invariant_basis = V^dagger U^m V with V the t = 0
/// frame states.
GateResult cyclic_gate(const Matrix& cycle_unitary, const InvariantFrame& frame, int cycles);
GateResult cyclic_gate(const Propagator& cycle, const InvariantFrame& frame, int cycles);

/// pi (1 - 2 mu/omega): one-cycle phase of the invariant level with eigenvalue mu.
double cycle_phase(double eigenvalue, double omega);

/// [[e^{ig} c^2 + e^{-ig} s^2, i sin(chi) sin(g)], [i sin(chi) sin(g), e^{ig} s^2 + e^{-ig} c^2]]
/// with c = cos(chi/2), s = sin(chi/2).
Matrix gate_formula(double chi, double gamma);

/// gate_formula at the drive's chi and gamma = pi (1 - lambda/omega).
Matrix computational_gate_formula(const SingleQubitDrive& d);

struct SimulationOptions {
    int grid_points = 4096;
    int steps = 100000;  // rounded up to a multiple of grid_points
    PropagatorMethod method = PropagatorMethod::Numeric;
};

/// One period of a drive: invariant frame plus the propagator on the same grid.
struct CycleSimulation {
    InvariantFrame frame;
    Propagator propagator;
    MatrixFn hamiltonian;

    PhaseReport phases() const { return phase_decomposition(hamiltonian, frame, propagator); }
    GateResult gate(int cycles) const { return cyclic_gate(propagator, frame, cycles); }
};

CycleSimulation simulate_cycle(const SingleQubitDrive& d, const SimulationOptions& options = {});
CycleSimulation simulate_cycle(const TwoQubitDrive& d, const SimulationOptions& options = {});

}  // namespace lrgate
