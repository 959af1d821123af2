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

// Driven spin Hamiltonians, their Lewis-Riesenfeld invariants, gauge-fixed
// invariant eigenframes and the split of the cyclic phase into dynamic and
// geometric parts.

#pragma once

#include <functional>
#include <vector>

#include "lrgate/propagator.hpp"
#include "lrgate/qops.hpp"

namespace lrgate {

/// Levels closer than this (relative to the drive frequency) count as degenerate.
inline constexpr double kDegeneracyTol = 1e-9;

/// Spin-1/2 in a field rotating about z:
/// H(t) = (omega1/2) sz + (omega2/2)(cos(wt) sx + sin(wt) sy).
struct SingleQubitDrive {
    double omega = 1.0;   // drive angular frequency
    double omega1 = 0.0;  // longitudinal Larmor frequency
    double omega2 = 0.0;  // transverse Larmor frequency

    double period() const;
    /// sqrt(omega2^2 + (omega1 - omega)^2), the invariant level splitting.
    double lambda() const;
    double field() const;  // sqrt(omega1^2 + omega2^2)

    /// Checks omega > 0, omega1 >= 0, omega2 >= 0. Throws OutOfDomain.
    void validate() const;
};

/// Two spins with Ising coupling, field rotating on spin 1 only:
/// H(t) = -(J/2) s1z s2z + (omega0/2)(cos(wt) s1x + sin(wt) s1y).
struct TwoQubitDrive {
    double omega = 1.0;
    double coupling = 0.0;  // J
    double omega0 = 0.0;

    double period() const;
    double lambda1() const;  // sqrt(omega0^2 + (J + omega)^2)
    double lambda2() const;  // sqrt(omega0^2 + (J - omega)^2)

    /// Effective single-spin drive seen by spin 1 when spin 2 is up
    /// (first = true, omega1 = -J) or down (omega1 = +J).
    SingleQubitDrive block_drive(bool first) const;

    void validate() const;
};

struct MixingAngles {
    double chi = 0.0;    // polar angle of the upper invariant eigenstate
    double theta = 0.0;  // polar angle of the static field
};

/// chi = 2 atan((lambda + omega - omega1)/omega2), theta = atan2(omega2, omega1).
/// At omega2 = 0 chi takes its limit, pi when omega1 < omega and 0 otherwise.
MixingAngles mixing_angles(const SingleQubitDrive& d);

Matrix hamiltonian_single(const SingleQubitDrive& d, double t);

/// I(t) = ((omega1 - omega)/2) sz + (omega2/2)(cos(wt) sx + sin(wt) sy).
/// Throws DegenerateInvariant when lambda <= 1e-9 omega.
Matrix invariant_single(const SingleQubitDrive& d, double t);

/// 4x4, tensor basis order.
Matrix hamiltonian_two(const TwoQubitDrive& d, double t);

/// Block-diagonal invariant I1 (+) I2 over the qubit-2 blocks.
/// Throws DegenerateInvariant when lambda1 or lambda2 is tiny or they coincide.
Matrix invariant_two(const TwoQubitDrive& d, double t);

MatrixFn hamiltonian_fn(const SingleQubitDrive& d);
MatrixFn hamiltonian_fn(const TwoQubitDrive& d);
MatrixFn invariant_fn(const SingleQubitDrive& d);
MatrixFn invariant_fn(const TwoQubitDrive& d);

/// Frobenius norm of dI/dt - i[I, H] with dI/dt by central difference of step h.
double invariance_residual(const MatrixFn& h_of_t, const MatrixFn& i_of_t, double t, double h);

/// Eigenstates of I(t) on a uniform grid over one period.
///
/// Gauge: at t = 0 each eigenvector has its largest-modulus component real
/// and positive. That component index is kept as the reference for the
/// whole grid and is held real and positive at every node, which makes the
/// frame single valued (|n, period> = |n, 0>). Consecutive overlaps are
/// checked to have positive real part and modulus >= 0.9.
class InvariantFrame {
public:
    InvariantFrame(std::vector<double> times, std::vector<double> eigenvalues,
                   std::vector<std::vector<Ket>> states, std::vector<std::size_t> reference,
                   double eigenvalue_drift);

    const std::vector<double>& times() const { return times_; }
    double period() const { return times_.back(); }
    std::size_t nodes() const { return times_.size(); }
    std::size_t levels() const { return eigenvalues_.size(); }
    std::size_t dim() const { return states_.front().front().dim(); }

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    /// Eigenvector of level n at grid node k.
    const Ket& state(std::size_t k, std::size_t n) const { return states_[k][n]; }
    std::size_t reference_component(std::size_t n) const { return reference_[n]; }

    /// max_k,n |lambda_n(t_k) - lambda_n(0)|.
    double eigenvalue_drift() const { return eigenvalue_drift_; }
    /// max entry deviation between the states at t = period and t = 0.
    double periodicity_defect() const;
    /// Smallest real part of <v(t_k)|v(t_k+1)> over all levels and steps.
    double min_step_overlap() const;

    /// Columns are the t = 0 eigenvectors.
    Matrix initial_basis() const;

    /// Same frame with every state multiplied by exp(i alpha(n, t)).
    InvariantFrame rephased(const std::function<double(std::size_t, double)>& alpha) const;

private:
    std::vector<double> times_;
    std::vector<double> eigenvalues_;
    std::vector<std::vector<Ket>> states_;
    std::vector<std::size_t> reference_;
    double eigenvalue_drift_;
};

/// grid_points is the number of intervals (even, >= 64).
/// Throws DegenerateInvariant or GaugeDiscontinuity.
InvariantFrame eigenframe(const MatrixFn& i_of_t, double period, int grid_points);

struct StatePhases {
    double eigenvalue = 0.0;
    double total = 0.0;  // unwrapped
    double dynamic = 0.0;
    double geometric = 0.0;

    double total_mod() const { return wrap_2pi(total); }
    double dynamic_mod() const { return wrap_2pi(dynamic); }
    double geometric_mod() const { return wrap_2pi(geometric); }
};

struct PhaseReport {
    std::vector<StatePhases> states;  // ordered like the frame levels
};

/// Lewis phase of each invariant eigenstate over the frame's grid.
///
/// dynamic = -int <n,t|H|n,t> dt (composite Simpson), total is accumulated
/// from arg <n,t_k|U(t_k)|n,0> with every increment taken in (-pi, pi],
/// geometric = total - dynamic.
/// Throws GridMismatch or NonUnitaryPropagator.
PhaseReport phase_decomposition(const MatrixFn& h_of_t, const InvariantFrame& frame, const Propagator& propagator);

/// Closed forms for the rotating-field spin. Index 0 is the +lambda/2 state.
struct ClosedFormPhases {
    std::array<double, 2> total;      // pi (1 -+ lambda/omega)
    std::array<double, 2> dynamic;    // -+ pi (|B|/omega) cos(chi - theta)
    std::array<double, 2> geometric;  // pi (1 +- cos chi)
};
ClosedFormPhases closed_form_phases(const SingleQubitDrive& d);

/// |chi - theta|: opening angle between invariant eigenstate and field.
double adiabatic_gap(const SingleQubitDrive& d);

}  // namespace lrgate
