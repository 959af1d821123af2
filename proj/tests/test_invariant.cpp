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

#include <cmath>

#include "gtest/gtest.h"
#include "lrgate/error.hpp"
#include "lrgate/propagate.hpp"
#include "oracles.hpp"

using namespace lrgate;
using lrgate::testing::DriveGen;
using lrgate::testing::max_entry_diff;

namespace {

template <class F>
void expect_error(ErrorCode code, F&& f) {
    try {
        f();
        ADD_FAILURE() << "expected " << error_code_name(code);
    } catch (const Error& e) {
        EXPECT_EQ(error_code_name(e.code()), error_code_name(code)) << e.what();
    }
}

const TwoQubitDrive kWorkedDrive{1.0, 16.0 / 27.0, 4.0 * std::sqrt(11.0) / 27.0};

PhaseReport analytic_phases(const SingleQubitDrive& d, int grid = 4096) {
    SimulationOptions o;
    o.grid_points = grid;
    o.method = PropagatorMethod::Analytic;
    return simulate_cycle(d, o).phases();
}

}  // namespace

// ---------------------------------------------------------------- operators

TEST(hamiltonian_single, longitudinal_only) {
    const SingleQubitDrive d{1.0, 1.0, 0.0};
    for (double t : {0.0, 0.3, 2.0, 7.1}) {
        EXPECT_EQ(max_entry_diff(hamiltonian_single(d, t), 0.5 * pauli::z()), 0.0);
    }
}

TEST(hamiltonian_single, substitution_at_t0) {
    const Matrix expected{{0.25, 0.25}, {0.25, -0.25}};
    EXPECT_LT(max_entry_diff(hamiltonian_single({1.0, 0.5, 0.5}, 0.0), expected), 1e-16);
}

TEST(hamiltonian_single, periodic_and_hermitian) {
    DriveGen gen(11);
    for (int i = 0; i < 100; ++i) {
        const SingleQubitDrive d = gen.single();
        const double t = gen.uniform(0.0, d.period());
        EXPECT_TRUE(hamiltonian_single(d, t).is_hermitian());
        EXPECT_LE(max_entry_diff(hamiltonian_single(d, d.period()), hamiltonian_single(d, 0.0)), 1e-14);
    }
}

TEST(invariant_single, resonant_drive_is_pure_sigma_x) {
    EXPECT_LT(max_entry_diff(invariant_single({1.0, 1.0, 0.5}, 0.0), 0.25 * pauli::x()), 1e-16);
}

TEST(invariant_single, substitution_at_t0) {
    const Matrix expected{{-0.25, 0.25}, {0.25, 0.25}};
    EXPECT_LT(max_entry_diff(invariant_single({1.0, 0.5, 0.5}, 0.0), expected), 1e-16);
}

TEST(invariant_single, spectrum_is_plus_minus_half_lambda) {
    DriveGen gen(12);
    for (int i = 0; i < 200; ++i) {
        const SingleQubitDrive d = gen.single();
        const double t = gen.uniform(-3.0, 10.0);
        const EigenDecomposition e = eigh(invariant_single(d, t));
        const double lam = std::sqrt(d.omega2 * d.omega2 + std::pow(d.omega1 - d.omega, 2));
        EXPECT_NEAR(e.eigenvalues[0], 0.5 * lam, 1e-12);
        EXPECT_NEAR(e.eigenvalues[1], -0.5 * lam, 1e-12);
    }
}

TEST(invariant_single, starts_as_rotating_frame_hamiltonian) {
    DriveGen gen(13);
    for (int i = 0; i < 20; ++i) {
        const SingleQubitDrive d = gen.single();
        const Matrix h0 = hamiltonian_single(d, 0.0) - (0.5 * d.omega) * pauli::z();
        EXPECT_LT(max_entry_diff(invariant_single(d, 0.0), h0), 1e-15);
    }
}

TEST(invariant_single, degenerate_drive_rejected) {
    expect_error(ErrorCode::DegenerateInvariant, [] { invariant_single({1.0, 1.0, 0.0}, 0.0); });
    expect_error(ErrorCode::DegenerateInvariant, [] { invariant_fn(SingleQubitDrive{2.0, 2.0, 1e-12}); });
}

TEST(mixing_angles, branch_and_limits) {
    const MixingAngles a = mixing_angles({1.0, 0.5, 0.5});
    EXPECT_NEAR(a.chi, 3.0 * kPi / 4.0, 1e-15);
    EXPECT_NEAR(a.theta, kPi / 4.0, 1e-15);
    EXPECT_DOUBLE_EQ(mixing_angles({1.0, 0.5, 0.0}).chi, kPi);
    EXPECT_DOUBLE_EQ(mixing_angles({1.0, 1.5, 0.0}).chi, 0.0);
    DriveGen gen(14);
    for (int i = 0; i < 100; ++i) {
        const SingleQubitDrive d = gen.single();
        const double chi = mixing_angles(d).chi;
        EXPECT_GT(chi, 0.0);
        EXPECT_LT(chi, kPi);
        // tan(chi/2) definition
        EXPECT_NEAR(std::tan(0.5 * chi), (d.lambda() + d.omega - d.omega1) / d.omega2, 1e-10 * std::tan(0.5 * chi));
    }
}

TEST(hamiltonian_two, pure_ising_in_paired_order) {
    const TwoQubitDrive d{1.0, 1.0, 0.0};
    const cplx expected[] = {-0.5, 0.5, 0.5, -0.5};
    EXPECT_EQ(max_entry_diff(to_paired_order(hamiltonian_two(d, 0.77)), Matrix::diagonal(expected)), 0.0);
}

TEST(hamiltonian_two, splits_into_displayed_blocks) {
    DriveGen gen(15);
    for (int i = 0; i < 100; ++i) {
        const TwoQubitDrive d = gen.two();
        const double t = gen.uniform(0.0, d.period());
        const double j = d.coupling, w0 = d.omega0;
        const cplx e = std::exp(kI * (d.omega * t));
        const Matrix h1{{-0.5 * j, 0.5 * w0 * std::conj(e)}, {0.5 * w0 * e, 0.5 * j}};
        const Matrix h2{{0.5 * j, 0.5 * w0 * std::conj(e)}, {0.5 * w0 * e, -0.5 * j}};
        const Matrix h = hamiltonian_two(d, t);
        EXPECT_LE(max_entry_diff(h, direct_sum(h1, h2, kQubit2Blocks)), 1e-14);
        EXPECT_LE(max_entry_diff(h, lrgate::testing::two_spin_hamiltonian_by_basis(d.omega, j, w0, t)), 1e-14);
        EXPECT_LE(max_entry_diff(hamiltonian_two(d, d.period()), hamiltonian_two(d, 0.0)), 1e-14);
    }
}

TEST(invariant_two, worked_example_spectrum) {
    const EigenDecomposition e = eigh(invariant_two(kWorkedDrive, 0.4));
    const double a = 5.0 / 6.0, b = std::sqrt(33.0) / 18.0;
    ASSERT_EQ(e.eigenvalues.size(), 4u);
    EXPECT_NEAR(e.eigenvalues[0], a, 1e-12);
    EXPECT_NEAR(e.eigenvalues[1], b, 1e-12);
    EXPECT_NEAR(e.eigenvalues[2], -b, 1e-12);
    EXPECT_NEAR(e.eigenvalues[3], -a, 1e-12);
    EXPECT_NEAR(kWorkedDrive.lambda1(), 5.0 / 3.0, 1e-12);
    EXPECT_NEAR(kWorkedDrive.lambda2(), std::sqrt(33.0) / 9.0, 1e-12);
}

TEST(invariant_two, zero_coupling_is_degenerate) {
    expect_error(ErrorCode::DegenerateInvariant, [] { invariant_two({1.0, 0.0, 0.5}, 0.0); });
}

TEST(invariant_two, starts_as_rotating_frame_hamiltonian) {
    DriveGen gen(16);
    for (int i = 0; i < 20; ++i) {
        const TwoQubitDrive d = gen.two();
        const Matrix shift = (0.5 * d.omega) * tensor_product(pauli::z(), pauli::identity());
        EXPECT_LE(max_entry_diff(invariant_two(d, 0.0), hamiltonian_two(d, 0.0) - shift), 1e-14);
        EXPECT_EQ(block_leakage(invariant_two(d, gen.uniform(0.0, 5.0))), 0.0);
    }
}

// ---------------------------------------------------------------- invariance law

TEST(invariance_residual, exact_derivative_equals_commutator) {
    DriveGen gen(17);
    for (int i = 0; i < 100; ++i) {
        const SingleQubitDrive d = gen.single();
        const double t = gen.uniform(0.0, d.period());
        const Matrix ham = hamiltonian_single(d, t), inv = invariant_single(d, t);
        const Matrix comm = kI * (inv * ham - ham * inv);
        EXPECT_LE((lrgate::testing::invariant_single_derivative(d, t) - comm).frobenius_norm(), 1e-14 * d.omega * d.omega);
    }
}

TEST(invariance_residual, single_family_central_difference) {
    DriveGen gen(18);
    for (int i = 0; i < 100; ++i) {
        const SingleQubitDrive d = gen.single();
        const double t = gen.uniform(0.0, d.period());
        const double r = invariance_residual(hamiltonian_fn(d), invariant_fn(d), t, 1e-5 * d.period());
        EXPECT_LE(r, 1e-7 * d.lambda());
    }
}

TEST(invariance_residual, two_family_central_difference) {
    DriveGen gen(19);
    for (int i = 0; i < 100; ++i) {
        const TwoQubitDrive d = gen.two();
        const double t = gen.uniform(0.0, d.period());
        const double r = invariance_residual(hamiltonian_fn(d), invariant_fn(d), t, 1e-5 * d.period());
        EXPECT_LE(r, 1e-7 * std::max(d.lambda1(), d.lambda2()));
    }
}

TEST(invariance_residual, shrinks_quadratically_with_step) {
    const SingleQubitDrive d{1.0, 0.3, 0.8};
    const double tau = d.period();
    const double r1 = invariance_residual(hamiltonian_fn(d), invariant_fn(d), 0.3, 1e-2 * tau);
    const double r2 = invariance_residual(hamiltonian_fn(d), invariant_fn(d), 0.3, 0.5e-2 * tau);
    EXPECT_NEAR(r1 / r2, 4.0, 0.05);
    const double h = 1e-2 * tau;
    EXPECT_LE(r1, 10.0 * d.omega * d.omega * d.lambda() * h * h);
}

TEST(invariance_residual, hamiltonian_commutes_with_itself) {
    DriveGen gen(20);
    const Matrix h = gen.hermitian(4);
    const MatrixFn constant = [&](double) { return h; };
    EXPECT_LE(invariance_residual(constant, constant, 0.0, 1e-3), 1e-13);
}

TEST(invariance_residual, unshifted_invariant_fails) {
    const SingleQubitDrive d{1.0, 0.4, 0.5};
    // using H itself as the "invariant" drops the -omega shift
    const double r = invariance_residual(hamiltonian_fn(d), hamiltonian_fn(d), 0.2, 1e-5 * d.period());
    EXPECT_GE(r, 0.1 * d.omega * d.omega2);
}

// ---------------------------------------------------------------- frame

TEST(eigenframe, initial_states_match_closed_form) {
    const SingleQubitDrive d{1.0, 0.5, 0.5};
    const InvariantFrame f = eigenframe(invariant_fn(d), d.period(), 256);
    const Ket& up = f.state(0, 0);
    EXPECT_NEAR(std::abs(up[0] - std::cos(3.0 * kPi / 8.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(up[1] - std::sin(3.0 * kPi / 8.0)), 0.0, 1e-14);
    EXPECT_NEAR(f.eigenvalues()[0], 0.5 * d.lambda(), 1e-15);
}

TEST(eigenframe, follows_closed_form_states_up_to_phase) {
    DriveGen gen(21);
    for (int i = 0; i < 20; ++i) {
        const SingleQubitDrive d = gen.single();
        const InvariantFrame f = eigenframe(invariant_fn(d), d.period(), 128);
        const double chi = mixing_angles(d).chi;
        for (std::size_t k = 0; k < f.nodes(); k += 7) {
            const cplx e = std::exp(kI * (d.omega * f.times()[k]));
            const Ket up{std::cos(chi / 2), e * std::sin(chi / 2)};
            const Ket dn{-std::sin(chi / 2), e * std::cos(chi / 2)};
            EXPECT_NEAR(std::abs(inner(up, f.state(k, 0))), 1.0, 1e-12);
            EXPECT_NEAR(std::abs(inner(dn, f.state(k, 1))), 1.0, 1e-12);
        }
    }
}

TEST(eigenframe, invariants_hold_for_both_families) {
    DriveGen gen(22);
    for (int i = 0; i < 20; ++i) {
        const SingleQubitDrive s = gen.single();
        const InvariantFrame fs = eigenframe(invariant_fn(s), s.period(), 512);
        EXPECT_LE(fs.periodicity_defect(), 1e-10);
        EXPECT_LE(fs.eigenvalue_drift(), 1e-10 * s.lambda());
        EXPECT_GT(fs.min_step_overlap(), 0.0);

        const TwoQubitDrive t = gen.two();
        const InvariantFrame ft = eigenframe(invariant_fn(t), t.period(), 512);
        EXPECT_EQ(ft.levels(), 4u);
        EXPECT_LE(ft.periodicity_defect(), 1e-10);
        EXPECT_LE(ft.eigenvalue_drift(), 1e-10 * std::max(t.lambda1(), t.lambda2()));
        EXPECT_GT(ft.min_step_overlap(), 0.0);
    }
}

TEST(eigenframe, weak_transverse_field_limit) {
    const SingleQubitDrive d{1.0, 0.5, 1e-7};
    const InvariantFrame f = eigenframe(invariant_fn(d), d.period(), 64);
    EXPECT_NEAR(std::abs(f.state(0, 0)[1]), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(f.state(0, 1)[0]), 1.0, 1e-12);
    EXPECT_NEAR(mixing_angles(d).chi, kPi, 1e-6);
}

TEST(eigenframe, rejects_bad_grid) {
    const SingleQubitDrive d{1.0, 0.5, 0.5};
    EXPECT_THROW(eigenframe(invariant_fn(d), d.period(), 63), std::invalid_argument);
    EXPECT_THROW(eigenframe(invariant_fn(d), d.period(), 32), std::invalid_argument);
}

TEST(eigenframe, degenerate_and_discontinuous_inputs) {
    const MatrixFn flat = [](double) { return Matrix::identity(2); };
    expect_error(ErrorCode::DegenerateInvariant, [&] { eigenframe(flat, 1.0, 64); });
    const MatrixFn jump = [](double t) { return t < 0.5 ? pauli::z() : pauli::x(); };
    expect_error(ErrorCode::GaugeDiscontinuity, [&] { eigenframe(jump, 1.0, 64); });
}

// ---------------------------------------------------------------- phases

TEST(phase_decomposition, circle_drive_has_no_dynamic_phase) {
    const SingleQubitDrive d{1.0, 0.5, 0.5};
    const PhaseReport r = analytic_phases(d);
    ASSERT_EQ(r.states.size(), 2u);
    EXPECT_NEAR(r.states[0].dynamic, 0.0, 1e-12);
    EXPECT_NEAR(r.states[1].dynamic, 0.0, 1e-12);
    EXPECT_LE(phase_distance(r.states[0].geometric, kPi * (1 - 1 / std::sqrt(2.0))), 1e-10);
    EXPECT_LE(phase_distance(r.states[1].geometric, kPi * (1 + 1 / std::sqrt(2.0))), 1e-10);
}

TEST(phase_decomposition, resonant_drive_total_phases) {
    const SingleQubitDrive d{1.0, 1.0, 0.5};
    EXPECT_DOUBLE_EQ(d.lambda(), 0.5);
    const PhaseReport r = analytic_phases(d);
    EXPECT_LE(phase_distance(r.states[0].total, kPi * 0.5), 1e-10);
    EXPECT_LE(phase_distance(r.states[1].total, kPi * 1.5), 1e-10);
}

TEST(phase_decomposition, closed_forms_on_random_drives) {
    DriveGen gen(23);
    for (int i = 0; i < 200; ++i) {
        const SingleQubitDrive d = gen.single();
        const PhaseReport r = analytic_phases(d);
        const ClosedFormPhases cf = closed_form_phases(d);
        for (std::size_t n = 0; n < 2; ++n) {
            const StatePhases& p = r.states[n];
            EXPECT_NEAR(p.total, p.dynamic + p.geometric, 1e-8);
            EXPECT_LE(phase_distance(p.total, cf.total[n]), 1e-6);
            EXPECT_NEAR(p.dynamic, cf.dynamic[n], 1e-6);
            EXPECT_LE(phase_distance(p.geometric, cf.geometric[n]), 1e-6);
        }
    }
}

TEST(phase_decomposition, independent_oracles_agree) {
    DriveGen gen(24);
    for (int i = 0; i < 30; ++i) {
        const SingleQubitDrive d = gen.single();
        SimulationOptions o;
        o.grid_points = 2048;
        o.method = PropagatorMethod::Analytic;
        const CycleSimulation sim = simulate_cycle(d, o);
        const PhaseReport r = sim.phases();
        for (std::size_t n = 0; n < 2; ++n) {
            // gauge-invariant loop phase of the frame vs extracted geometric phase
            EXPECT_LE(phase_distance(r.states[n].geometric, lrgate::testing::bargmann_phase(sim.frame, n)), 1e-6);
            EXPECT_NEAR(r.states[n].dynamic, lrgate::testing::dynamic_phase_trapezoid(d, n == 0, 2000), 1e-9);
        }
    }
}

TEST(phase_decomposition, gauge_invariance_under_periodic_rephasing) {
    DriveGen gen(25);
    for (int i = 0; i < 20; ++i) {
        const SingleQubitDrive d = gen.single();
        SimulationOptions o;
        o.grid_points = 1024;
        o.method = PropagatorMethod::Analytic;
        const CycleSimulation sim = simulate_cycle(d, o);
        const PhaseReport base = sim.phases();
        const double a = gen.uniform(-2.0, 2.0), b = gen.uniform(-2.0, 2.0), w = d.omega;
        const InvariantFrame shifted =
            sim.frame.rephased([&](std::size_t n, double t) { return a * std::sin(w * t) + (n + 1) * b * std::cos(2 * w * t); });
        const PhaseReport moved = phase_decomposition(sim.hamiltonian, shifted, sim.propagator);
        for (std::size_t n = 0; n < 2; ++n) {
            EXPECT_NEAR(moved.states[n].geometric, base.states[n].geometric, 1e-8);
            EXPECT_NEAR(moved.states[n].total, base.states[n].total, 1e-8);
        }
    }
}

TEST(phase_decomposition, no_transitions_between_levels) {
    DriveGen gen(26);
    for (int i = 0; i < 10; ++i) {
        const TwoQubitDrive d = gen.two();
        SimulationOptions o;
        o.grid_points = 256;
        o.method = PropagatorMethod::Analytic;
        const CycleSimulation sim = simulate_cycle(d, o);
        for (std::size_t k = 0; k < sim.frame.nodes(); ++k) {
            for (std::size_t m = 0; m < 4; ++m)
                for (std::size_t n = 0; n < 4; ++n) {
                    if (m == n) continue;
                    const cplx amp = inner(sim.frame.state(k, m), sim.propagator.unitaries[k] * sim.frame.state(0, n));
                    EXPECT_LE(std::abs(amp), 1e-8);
                }
        }
    }
}

TEST(phase_decomposition, two_qubit_totals_follow_eigenvalues) {
    SimulationOptions o;
    o.method = PropagatorMethod::Analytic;
    const CycleSimulation sim = simulate_cycle(kWorkedDrive, o);
    const PhaseReport r = sim.phases();
    for (const StatePhases& p : r.states) {
        EXPECT_LE(phase_distance(p.total, cycle_phase(p.eigenvalue, kWorkedDrive.omega)), 1e-9);
        EXPECT_NEAR(p.total, p.dynamic + p.geometric, 1e-8);
    }
}

TEST(phase_decomposition, grid_and_unitarity_checks) {
    const SingleQubitDrive d{1.0, 0.5, 0.5};
    const InvariantFrame f = eigenframe(invariant_fn(d), d.period(), 64);
    const Propagator coarse = analytic_propagator(d, uniform_grid(d.period(), 32));
    expect_error(ErrorCode::GridMismatch, [&] { phase_decomposition(hamiltonian_fn(d), f, coarse); });
    Propagator skewed = analytic_propagator(d, uniform_grid(d.period(), 64));
    skewed.times[5] += 1e-3;
    expect_error(ErrorCode::GridMismatch, [&] { phase_decomposition(hamiltonian_fn(d), f, skewed); });
    Propagator scaled = analytic_propagator(d, f.times());
    scaled.unitaries[10] *= 1.001;
    expect_error(ErrorCode::NonUnitaryPropagator, [&] { phase_decomposition(hamiltonian_fn(d), f, scaled); });
}

// ---------------------------------------------------------------- adiabatic limit

TEST(adiabatic_gap, slow_drive_aligns_state_with_field) {
    EXPECT_LE(adiabatic_gap({1e-3, 1.0, 1.0}), 2e-3);
    EXPECT_NEAR(adiabatic_gap({1.0, 0.5, 0.5}), kPi / 2.0, 1e-15);
    double prev = adiabatic_gap({1e-1, 1.0, 1.0});
    for (double w : {1e-2, 1e-3}) {
        const double g = adiabatic_gap({w, 1.0, 1.0});
        EXPECT_LT(g, prev);
        prev = g;
    }
}
