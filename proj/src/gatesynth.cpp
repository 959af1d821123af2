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

#include "lrgate/gatesynth.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "lrgate/error.hpp"

namespace lrgate {

namespace {

double constraint_lhs(double omega, double omega1, double omega2) {
    const double lambda = std::hypot(omega2, omega1 - omega);
    const double x = lambda + omega - omega1;
    const double den = omega2 * omega2 + x * x;
    if (den == 0.0) throw Error(ErrorCode::OutOfDomain, "elimination constraint undefined (omega2 = 0, omega1 >= omega)");
    return x * (omega1 * omega1 - omega * omega1 + omega2 * omega2) / den;
}

// Dynamic/geometric phases of the two invariant states of a single-spin drive.
void attach_phases(EliminationSolution& s, int grid_points) {
    SimulationOptions opts;
    opts.grid_points = grid_points;
    opts.method = PropagatorMethod::Analytic;
    const PhaseReport r = simulate_cycle(s.drive, opts).phases();
    for (std::size_t n = 0; n < 2; ++n) {
        s.dynamic[n] = r.states[n].dynamic;
        s.geometric[n] = r.states[n].geometric;
    }
}

}  // namespace

double elimination_constraint_single(const SingleQubitDrive& d) { return constraint_lhs(d.omega, d.omega1, d.omega2); }

double elimination_constraint_two(const TwoQubitDrive& d, int m) {
    if (m < 1) throw std::invalid_argument("elimination_constraint_two: m must be >= 1");
    return constraint_lhs(d.omega, d.coupling, d.omega0);
}

double elimination_target(double omega, int K, int m) { return K * omega / (2.0 * m); }

EliminationSolution solve_elimination_single(double omega, int K, double seed_omega1, int grid_points) {
    if (!(omega > 0.0)) throw Error(ErrorCode::OutOfDomain, "omega must be positive");
    EliminationSolution s;
    s.K = K;
    s.drive.omega = omega;
    s.drive.omega1 = seed_omega1;

    if (K == 0) {
        const double disc = omega * seed_omega1 - seed_omega1 * seed_omega1;
        if (!(disc > 0.0)) {
            throw Error(ErrorCode::OutOfDomain, "K = 0 needs 0 < omega1 < omega, got omega1 = " + std::to_string(seed_omega1));
        }
        s.drive.omega2 = std::sqrt(disc);
    } else {
        if (!(seed_omega1 >= 0.0)) throw Error(ErrorCode::OutOfDomain, "omega1 must be >= 0");
        const double target = elimination_target(omega, K);
        auto f = [&](double w2) { return constraint_lhs(omega, seed_omega1, w2) - target; };

        // The LHS grows like omega2/2, so the root (if any) lies below hi.
        const double hi = 4.0 * (std::abs(K) * omega + seed_omega1 + omega);
        const double lo = 1e-6 * omega;
        constexpr int kScan = 400;
        double a = lo, fa = f(lo);
        double b = 0.0;
        bool bracketed = false;
        for (int i = 1; i <= kScan; ++i) {
            const double w = lo * std::pow(hi / lo, static_cast<double>(i) / kScan);
            const double fw = f(w);
            if ((fa < 0.0) != (fw < 0.0)) {
                b = w;
                bracketed = true;
                break;
            }
            a = w;
            fa = fw;
        }
        if (!bracketed) {
            throw Error(ErrorCode::NoRootInBracket,
                        "no omega2 in [" + std::to_string(lo) + ", " + std::to_string(hi) + "] solves K = " + std::to_string(K));
        }
        double mid = 0.5 * (a + b);
        for (int it = 0; it < 200; ++it) {
            mid = 0.5 * (a + b);
            const double fm = f(mid);
            if (std::abs(fm) <= 1e-12 * omega || b - a <= 1e-16 * b) break;
            if ((fm < 0.0) == (fa < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        s.drive.omega2 = mid;
    }

    s.residual = elimination_constraint_single(s.drive) - elimination_target(omega, K);
    if (std::abs(s.residual) > kConstraintTol * omega) {
        throw Error(ErrorCode::ConstraintViolated, "solver residual " + std::to_string(s.residual));
    }
    attach_phases(s, grid_points);
    const double expected = -K * kPi;
    if (phase_distance(s.dynamic[0], expected) > 1e-6 || phase_distance(s.dynamic[1], -expected) > 1e-6) {
        throw Error(ErrorCode::ConstraintViolated, "quadrature dynamic phases do not match -+K pi");
    }
    return s;
}

CycleSolution find_cycles(double lambda1_over_omega, int max_m, double tol) {
    if (max_m < 1 || tol < 0.0) throw std::invalid_argument("find_cycles: need max_m >= 1 and tol >= 0");
    for (int m = 1; m <= max_m; ++m) {
        const double x = m * (1.0 + lambda1_over_omega);
        const double n = std::round(0.5 * x);
        const double err = std::abs(x - 2.0 * n);
        if (err <= tol) return CycleSolution{m, static_cast<long long>(n), lambda1_over_omega, err};
    }
    throw Error(ErrorCode::NoCommensurateCycle,
                "no m <= " + std::to_string(max_m) + " makes m(1 + " + std::to_string(lambda1_over_omega) + ") even");
}

CycleSolution find_cycles_rational(long long p, long long q, int max_m) {
    if (q <= 0 || p < 0) throw std::invalid_argument("find_cycles_rational: need p >= 0, q > 0");
    const long long g = std::gcd(p + q, 2 * q);
    const long long m = 2 * q / g;
    if (m > max_m) {
        throw Error(ErrorCode::NoCommensurateCycle, "exact cycle count " + std::to_string(m) + " exceeds max_m");
    }
    return CycleSolution{static_cast<int>(m), m * (p + q) / (2 * q), static_cast<double>(p) / static_cast<double>(q), 0.0};
}

ControlledGateSpec build_controlled_u(double omega, double coupling, double omega0, int max_m, int K,
                                      const SimulationOptions& options) {
    ControlledGateSpec result;
    result.drive = TwoQubitDrive{omega, coupling, omega0};
    result.drive.validate();
    result.K = K;
    invariant_two(result.drive, 0.0);  // degeneracy gate

    const double l1 = result.drive.lambda1() / omega;
    const double l2 = result.drive.lambda2() / omega;
    result.cycles = find_cycles(l1, max_m);
    const int m = result.cycles.m;

    result.constraint_residual = elimination_constraint_two(result.drive, m) - elimination_target(omega, K, m);
    if (std::abs(result.constraint_residual) > kConstraintTol * omega) {
        throw Error(ErrorCode::ConstraintViolated,
                    "dynamic phases of the target block are not equal mod 2pi (residual " +
                        std::to_string(result.constraint_residual) + ")");
    }

    const CycleSimulation sim = simulate_cycle(result.drive, options);
    result.gate = sim.gate(m);
    if (result.gate.diagnostics.block_leakage > kVerifyTol) {
        throw Error(ErrorCode::BlockLeakage, "cross-block amplitude " + std::to_string(result.gate.diagnostics.block_leakage));
    }

    const Matrix upper = block(result.gate.computational_basis, true);
    const Matrix lower = block(result.gate.computational_basis, false);
    result.upper_fidelity = gate_fidelity(upper, Matrix::identity(2));
    result.upper_deviation = (upper - Matrix::identity(2)).max_abs();
    if (result.upper_fidelity < 1.0 - kVerifyTol) {
        throw Error(ErrorCode::ConstraintViolated, "control block is not the identity after m cycles");
    }

    // Levels of the lower block have eigenvalues +-lambda2/2.
    const PhaseReport per_cycle = sim.phases();
    const double half2 = 0.5 * result.drive.lambda2();
    for (std::size_t n = 0; n < per_cycle.states.size(); ++n) {
        const double mu = per_cycle.states[n].eigenvalue;
        if (std::abs(std::abs(mu) - half2) > 1e-9 * omega) continue;
        const std::size_t slot = mu > 0.0 ? 0 : 1;
        result.geometric[slot] = m * per_cycle.states[n].geometric;
        result.dynamic[slot] = m * per_cycle.states[n].dynamic;
        result.lower_eigenphases[slot] = std::arg(result.gate.invariant_basis(n, n));
    }
    result.target_phases = {m * kPi * (1.0 - l2), m * kPi * (1.0 + l2)};
    result.max_phase_error = std::max(phase_distance(result.lower_eigenphases[0], result.target_phases[0]),
                                    phase_distance(result.lower_eigenphases[1], result.target_phases[1]));

    const double chi2 = mixing_angles(result.drive.block_drive(false)).chi;
    result.formula_fidelity = gate_fidelity(lower, gate_formula(chi2, result.target_phases[0]));
    return result;
}

EliminationSolution synthesize_single_qubit_phase(double omega, double gamma_target) {
    if (!(omega > 0.0)) throw Error(ErrorCode::OutOfDomain, "omega must be positive");
    // On the K = 0 circle lambda = sqrt(omega^2 - omega omega1), so
    // gamma_+ = pi (1 - lambda/omega) runs monotonically over (0, pi).
    const double ratio = 1.0 - gamma_target / kPi;
    if (!(gamma_target > 0.0) || !(ratio > kDegeneracyTol)) {
        throw Error(ErrorCode::UnreachablePhase, "target " + std::to_string(gamma_target) + " outside (0, pi)");
    }
    auto gamma_of = [omega](double w1) { return kPi * (1.0 - std::sqrt(omega * omega - omega * w1) / omega); };
    double a = 0.0, b = omega;
    for (int it = 0; it < 200 && b - a > 1e-16 * omega; ++it) {
        const double mid = 0.5 * (a + b);
        (gamma_of(mid) < gamma_target ? a : b) = mid;
    }
    const double w1 = 0.5 * (a + b);

    EliminationSolution s;
    s.K = 0;
    s.drive = SingleQubitDrive{omega, w1, std::sqrt(std::max(0.0, omega * w1 - w1 * w1))};
    if (!(s.drive.lambda() > kDegeneracyTol * omega)) {
        throw Error(ErrorCode::UnreachablePhase, "target requires a degenerate invariant");
    }
    s.residual = s.drive.omega2 > 0.0 ? elimination_constraint_single(s.drive) : 0.0;
    const ClosedFormPhases cf = closed_form_phases(s.drive);
    s.dynamic = cf.dynamic;
    s.geometric = {kPi * (1.0 - s.drive.lambda() / omega), kPi * (1.0 + s.drive.lambda() / omega)};
    if (std::abs(s.geometric[0] - gamma_target) > 1e-8) {
        throw Error(ErrorCode::UnreachablePhase, "bisection did not reach the target");
    }
    return s;
}

}  // namespace lrgate
