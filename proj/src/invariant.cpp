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

#include "lrgate/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lrgate/error.hpp"

namespace lrgate {

// ---------------------------------------------------------------- drives

double SingleQubitDrive::period() const { return kTwoPi / omega; }

double SingleQubitDrive::lambda() const { return std::hypot(omega2, omega1 - omega); }

double SingleQubitDrive::field() const { return std::hypot(omega1, omega2); }

void SingleQubitDrive::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorCode::OutOfDomain, "omega must be positive");
    if (!(omega1 >= 0.0) || !std::isfinite(omega1)) throw Error(ErrorCode::OutOfDomain, "omega1 must be >= 0");
    if (!(omega2 >= 0.0) || !std::isfinite(omega2)) throw Error(ErrorCode::OutOfDomain, "omega2 must be >= 0");
}

double TwoQubitDrive::period() const { return kTwoPi / omega; }

double TwoQubitDrive::lambda1() const { return std::hypot(omega0, coupling + omega); }

double TwoQubitDrive::lambda2() const { return std::hypot(omega0, coupling - omega); }

SingleQubitDrive TwoQubitDrive::block_drive(bool first) const {
    return SingleQubitDrive{omega, first ? -coupling : coupling, omega0};
}

void TwoQubitDrive::validate() const {
    if (!(omega > 0.0) || !std::isfinite(omega)) throw Error(ErrorCode::OutOfDomain, "omega must be positive");
    if (!std::isfinite(coupling)) throw Error(ErrorCode::OutOfDomain, "J must be finite");
    if (!(omega0 >= 0.0) || !std::isfinite(omega0)) throw Error(ErrorCode::OutOfDomain, "omega0 must be >= 0");
}

MixingAngles mixing_angles(const SingleQubitDrive& d) {
    // atan2 covers omega2 = 0: numerator > 0 gives pi, numerator = 0 gives 0.
    MixingAngles a;
    a.chi = 2.0 * std::atan2(d.lambda() + d.omega - d.omega1, d.omega2);
    a.theta = std::atan2(d.omega2, d.omega1);
    return a;
}

// ---------------------------------------------------------------- operators

namespace {

Matrix rotating_spin(double longitudinal, double transverse, double phase) {
    const cplx off = 0.5 * transverse * std::exp(-kI * phase);
    return Matrix{{0.5 * longitudinal, off}, {std::conj(off), -0.5 * longitudinal}};
}

void require_nondegenerate(const SingleQubitDrive& d) {
    if (!(d.lambda() > kDegeneracyTol * d.omega)) {
        throw Error(ErrorCode::DegenerateInvariant,
                    "invariant levels coincide (lambda = " + std::to_string(d.lambda()) + ")");
    }
}

void require_nondegenerate(const TwoQubitDrive& d) {
    const double l1 = d.lambda1(), l2 = d.lambda2();
    const double tol = kDegeneracyTol * d.omega;
    if (!(l1 > tol) || !(l2 > tol) || !(std::abs(l1 - l2) > tol)) {
        throw Error(ErrorCode::DegenerateInvariant,
                    "two-qubit invariant is degenerate (lambda1 = " + std::to_string(l1) +
                        ", lambda2 = " + std::to_string(l2) + ")");
    }
}

}  // namespace

Matrix hamiltonian_single(const SingleQubitDrive& d, double t) {
    return rotating_spin(d.omega1, d.omega2, d.omega * t);
}

Matrix invariant_single(const SingleQubitDrive& d, double t) {
    require_nondegenerate(d);
    return rotating_spin(d.omega1 - d.omega, d.omega2, d.omega * t);
}

Matrix hamiltonian_two(const TwoQubitDrive& d, double t) {
    // -(J/2) sz(x)sz + (w0/2)(cos wt sx + sin wt sy)(x)1
    const double zz = 0.5 * d.coupling;
    const cplx lo = (0.5 * d.omega0) * std::exp(kI * (d.omega * t));
    Matrix h(4);
    h(0, 0) = -zz;
    h(1, 1) = zz;
    h(2, 2) = zz;
    h(3, 3) = -zz;
    h(2, 0) = lo;
    h(3, 1) = lo;
    h(0, 2) = std::conj(lo);
    h(1, 3) = std::conj(lo);
    return h;
}

Matrix invariant_two(const TwoQubitDrive& d, double t) {
    require_nondegenerate(d);
    const SingleQubitDrive b1 = d.block_drive(true), b2 = d.block_drive(false);
    const double wt = d.omega * t;
    return direct_sum(rotating_spin(b1.omega1 - d.omega, d.omega0, wt),
                      rotating_spin(b2.omega1 - d.omega, d.omega0, wt), kQubit2Blocks);
}

MatrixFn hamiltonian_fn(const SingleQubitDrive& d) {
    return [d](double t) { return hamiltonian_single(d, t); };
}

MatrixFn hamiltonian_fn(const TwoQubitDrive& d) {
    return [d](double t) { return hamiltonian_two(d, t); };
}

MatrixFn invariant_fn(const SingleQubitDrive& d) {
    require_nondegenerate(d);
    return [d](double t) { return invariant_single(d, t); };
}

MatrixFn invariant_fn(const TwoQubitDrive& d) {
    require_nondegenerate(d);
    return [d](double t) { return invariant_two(d, t); };
}

double invariance_residual(const MatrixFn& h_of_t, const MatrixFn& i_of_t, double t, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("invariance_residual: step must be positive");
    const Matrix ham = h_of_t(t);
    const Matrix inv = i_of_t(t);
    Matrix r = (1.0 / (2.0 * h)) * (i_of_t(t + h) - i_of_t(t - h));
    r -= kI * (inv * ham - ham * inv);
    return r.frobenius_norm();
}

// ---------------------------------------------------------------- frame

InvariantFrame::InvariantFrame(std::vector<double> times, std::vector<double> eigenvalues,
                               std::vector<std::vector<Ket>> states, std::vector<std::size_t> reference,
                               double eigenvalue_drift)
    : times_(std::move(times)),
      eigenvalues_(std::move(eigenvalues)),
      states_(std::move(states)),
      reference_(std::move(reference)),
      eigenvalue_drift_(eigenvalue_drift) {
    if (times_.size() < 2 || states_.size() != times_.size()) {
        throw std::invalid_argument("InvariantFrame: states must cover every grid node");
    }
}

double InvariantFrame::periodicity_defect() const {
    double worst = 0.0;
    for (std::size_t n = 0; n < levels(); ++n) {
        const Ket& a = states_.front()[n];
        const Ket& b = states_.back()[n];
        for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

double InvariantFrame::min_step_overlap() const {
    double worst = 1.0;
    for (std::size_t k = 0; k + 1 < nodes(); ++k)
        for (std::size_t n = 0; n < levels(); ++n)
            worst = std::min(worst, inner(states_[k][n], states_[k + 1][n]).real());
    return worst;
}

Matrix InvariantFrame::initial_basis() const {
    Matrix v(dim());
    for (std::size_t n = 0; n < levels(); ++n) v.set_column(n, states_.front()[n]);
    return v;
}

InvariantFrame InvariantFrame::rephased(const std::function<double(std::size_t, double)>& alpha) const {
    auto states = states_;
    for (std::size_t k = 0; k < nodes(); ++k)
        for (std::size_t n = 0; n < levels(); ++n) states[k][n] *= std::exp(kI * alpha(n, times_[k]));
    return InvariantFrame(times_, eigenvalues_, std::move(states), reference_, eigenvalue_drift_);
}

std::vector<double> uniform_grid(double period, int intervals) {
    std::vector<double> t(static_cast<std::size_t>(intervals) + 1);
    for (int k = 0; k <= intervals; ++k) t[k] = period * static_cast<double>(k) / intervals;
    t.back() = period;
    return t;
}

InvariantFrame eigenframe(const MatrixFn& i_of_t, double period, int grid_points) {
    if (grid_points < 64 || grid_points % 2 != 0) {
        throw std::invalid_argument("eigenframe: grid_points must be even and >= 64");
    }
    const std::vector<double> times = uniform_grid(period, grid_points);

    EigenDecomposition e0 = eigh(i_of_t(0.0));
    const std::size_t levels = e0.eigenvalues.size();
    const double spread = e0.eigenvalues.front() - e0.eigenvalues.back();

    auto check_spacing = [&](const std::vector<double>& ev, double t) {
        for (std::size_t n = 0; n + 1 < ev.size(); ++n) {
            if (!(ev[n] - ev[n + 1] > kDegeneracyTol * spread)) {
                throw Error(ErrorCode::DegenerateInvariant, "level spacing vanishes at t = " + std::to_string(t));
            }
        }
    };
    check_spacing(e0.eigenvalues, 0.0);

    std::vector<std::size_t> reference(levels);
    for (std::size_t n = 0; n < levels; ++n) {
        const Ket& v = e0.eigenvectors[n];
        double best = 0.0;
        for (std::size_t i = 0; i < v.dim(); ++i) best = std::max(best, std::abs(v[i]));
        for (std::size_t i = 0; i < v.dim(); ++i) {
            if (std::abs(v[i]) >= best * (1.0 - 1e-12)) {
                reference[n] = i;
                break;
            }
        }
    }

    std::vector<std::vector<Ket>> states;
    states.reserve(times.size());
    states.push_back(e0.eigenvectors);
    double drift = 0.0;

    for (std::size_t k = 1; k < times.size(); ++k) {
        EigenDecomposition e = eigh(i_of_t(times[k]));
        check_spacing(e.eigenvalues, times[k]);
        for (std::size_t n = 0; n < levels; ++n) {
            drift = std::max(drift, std::abs(e.eigenvalues[n] - e0.eigenvalues[n]));
            Ket& v = e.eigenvectors[n];
            const cplx ref = v[reference[n]];
            const double mag = std::abs(ref);
            if (mag < 1e-8) {
                throw Error(ErrorCode::GaugeDiscontinuity,
                            "reference component vanishes at t = " + std::to_string(times[k]));
            }
            v *= std::conj(ref) / mag;
            v[reference[n]] = mag;
            const cplx overlap = inner(states.back()[n], v);
            if (std::abs(overlap) < 0.9 || overlap.real() <= 0.0) {
                throw Error(ErrorCode::GaugeDiscontinuity,
                            "eigenvector jumps between consecutive nodes at t = " + std::to_string(times[k]));
            }
        }
        states.push_back(std::move(e.eigenvectors));
    }

    return InvariantFrame(times, e0.eigenvalues, std::move(states), std::move(reference), drift);
}

// ---------------------------------------------------------------- phases

namespace {

double simpson(const std::vector<double>& f, double step) {
    const std::size_t n = f.size() - 1;  // even
    double s = f.front() + f.back();
    for (std::size_t k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f[k];
    return s * step / 3.0;
}

// Difference of two angles in (-pi, pi].
double angle_step(double to, double from) {
    double d = std::remainder(to - from, kTwoPi);
    if (d <= -kPi) d += kTwoPi;
    return d;
}

}  // namespace

PhaseReport phase_decomposition(const MatrixFn& h_of_t, const InvariantFrame& frame, const Propagator& propagator) {
    const auto& times = frame.times();
    if (propagator.size() != times.size()) {
        throw Error(ErrorCode::GridMismatch, "propagator has " + std::to_string(propagator.size()) +
                                                 " nodes, frame has " + std::to_string(times.size()));
    }
    const double period = frame.period();
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (std::abs(propagator.times[k] - times[k]) > 1e-12 * period) {
            throw Error(ErrorCode::GridMismatch, "grid times differ at node " + std::to_string(k));
        }
        if (unitarity_defect(propagator.unitaries[k]) > kVerifyTol) {
            throw Error(ErrorCode::NonUnitaryPropagator, "propagator not unitary at node " + std::to_string(k));
        }
    }

    const std::size_t intervals = times.size() - 1;
    const double step = period / static_cast<double>(intervals);

    std::vector<Matrix> hams;
    hams.reserve(times.size());
    for (double t : times) hams.push_back(h_of_t(t));

    PhaseReport report;
    for (std::size_t n = 0; n < frame.levels(); ++n) {
        const Ket& v0 = frame.state(0, n);
        std::vector<double> energy(times.size());
        double total = 0.0;
        double prev_arg = std::arg(inner(v0, propagator.unitaries[0] * v0));
        for (std::size_t k = 0; k < times.size(); ++k) {
            const Ket& vk = frame.state(k, n);
            energy[k] = inner(vk, hams[k] * vk).real();
            if (k > 0) {
                const double a = std::arg(inner(vk, propagator.unitaries[k] * v0));
                total += angle_step(a, prev_arg);
                prev_arg = a;
            }
        }
        StatePhases p;
        p.eigenvalue = frame.eigenvalues()[n];
        p.total = total;
        p.dynamic = -simpson(energy, step);
        p.geometric = p.total - p.dynamic;
        report.states.push_back(p);
    }
    return report;
}

ClosedFormPhases closed_form_phases(const SingleQubitDrive& d) {
    const double ratio = d.lambda() / d.omega;
    const MixingAngles a = mixing_angles(d);
    const double dyn = kPi * d.field() / d.omega * std::cos(a.chi - a.theta);
    const double c = std::cos(a.chi);
    return ClosedFormPhases{{kPi * (1.0 - ratio), kPi * (1.0 + ratio)}, {-dyn, dyn}, {kPi * (1.0 + c), kPi * (1.0 - c)}};
}

double adiabatic_gap(const SingleQubitDrive& d) {
    const MixingAngles a = mixing_angles(d);
    return std::abs(a.chi - a.theta);
}

}  // namespace lrgate
