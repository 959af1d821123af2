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

// Parameter synthesis for purely geometric gates: drives whose invariant
// eigenstates pick up equal dynamic phases (mod 2pi) over a gate, cycle
// counts that close the control block, and the controlled-U construction.

#pragma once

#include <array>

#include "lrgate/invariant.hpp"
#include "lrgate/propagate.hpp"

namespace lrgate {

/// Residual and threshold for accepting a constraint solution, relative to omega.
inline constexpr double kConstraintTol = 1e-10;

struct EliminationSolution {
    SingleQubitDrive drive;
    int K = 0;
    double residual = 0.0;                 // constraint LHS - K omega / 2
    std::array<double, 2> dynamic{};       // quadrature dynamic phases (+, -)
    std::array<double, 2> geometric{};     // geometric phases (+, -), unwrapped
};

struct CycleSolution {
    int m = 1;
    long long N = 1;
    double ratio = 0.0;  // lambda1 / omega
    double approximation_error = 0.0;  // |m (1 + ratio) - 2N|
};

struct ControlledGateSpec {
    TwoQubitDrive drive;
    int K = 0;
    CycleSolution cycles;
    double constraint_residual = 0.0;  // LHS - K omega / (2m)
    GateResult gate;                   // m-cycle gate, tensor basis
    double upper_fidelity = 0.0;       // upper block vs identity
    double upper_deviation = 0.0;      // max |upper - 1|
    std::array<double, 2> target_phases{};        // m pi (1 -+ lambda2/omega)
    std::array<double, 2> geometric{};            // achieved over m cycles, unwrapped
    std::array<double, 2> dynamic{};              // achieved over m cycles
    std::array<double, 2> lower_eigenphases{};    // arg of lower-block diagonal, invariant basis
    double formula_fidelity = 0.0;  // lower block vs gate_formula(chi2, m pi (1 - lambda2/omega))
    double max_phase_error = 0.0;   // lower eigenphases vs target, on the circle
};

/// (lambda + w - w1)(w1^2 - w w1 + w2^2) / (w2^2 + (lambda + w - w1)^2).
/// Equals K w / 2 exactly when the dynamic phases are -+ K pi.
/// Throws OutOfDomain if the denominator vanishes.
double elimination_constraint_single(const SingleQubitDrive& d);

/// Same expression for the lower (qubit 2 down) block: w1 -> J, w2 -> w0.
/// Compare against elimination_target(omega, K, m).
double elimination_constraint_two(const TwoQubitDrive& d, int m);

/// K omega / (2 m).
double elimination_target(double omega, int K, int m = 1);

/// Solve the elimination constraint for omega2 at fixed omega1 = seed.
/// K = 0 has the closed form omega2 = sqrt(omega omega1 - omega1^2);
/// other K use bracketed bisection on omega2.
/// Throws OutOfDomain, NoRootInBracket, ConstraintViolated.
EliminationSolution solve_elimination_single(double omega, int K, double seed_omega1, int grid_points = 4096);

/// Smallest m <= max_m with |m (1 + ratio) - 2N| <= tol. Throws NoCommensurateCycle.
CycleSolution find_cycles(double lambda1_over_omega, int max_m = 64, double tol = 1e-9);

/// Exact variant for ratio = p/q: m = 2q / gcd(p + q, 2q).
CycleSolution find_cycles_rational(long long p, long long q, int max_m = 64);

/// Controlled-U from m cycles of the two-spin drive. The upper block is the
/// identity when m cycles close it; the lower block carries the geometric
/// phases m pi (1 -+ lambda2/omega).
/// Throws DegenerateInvariant, NoCommensurateCycle, ConstraintViolated, BlockLeakage.
ControlledGateSpec build_controlled_u(double omega, double coupling, double omega0, int max_m = 64, int K = 0,
                                      const SimulationOptions& options = {});

/// Drive on the K = 0 circle w1^2 + w2^2 = w w1 whose upper invariant state
/// gathers the geometric phase gamma_target = pi (1 - lambda/omega) per cycle.
/// Reachable targets lie in (0, pi). Throws UnreachablePhase.
EliminationSolution synthesize_single_qubit_phase(double omega, double gamma_target);

}  // namespace lrgate
