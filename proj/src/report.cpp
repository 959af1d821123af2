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

#include "lrgate/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lrgate/error.hpp"
#include "lrgate/gatesynth.hpp"
#include "lrgate/invariant.hpp"
#include "lrgate/propagate.hpp"

namespace lrgate::cli {

std::string_view command_name(Command c) {
    switch (c) {
        case Command::Verify: return "verify";
        case Command::Phases: return "phases";
        case Command::Gate: return "gate";
        case Command::Solve: return "solve";
        case Command::ControlledU: return "controlled-u";
        case Command::Sweep: return "sweep";
    }
    return "?";
}

namespace {

[[noreturn]] void config_error(std::string_view field, const std::string& msg) {
    throw Error(ErrorCode::ConfigParseError, "field " + std::string(field) + ": " + msg);
}

// ---------------------------------------------------------------- number grammar

class NumberParser {
public:
    NumberParser(std::string_view text, std::string_view field) : s_(text), field_(field) {}

    double parse() {
        skip_ws();
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1.0 : 1.0;
        double value = 0.0;
        if (starts_with("sqrt(")) {
            value = parse_sqrt();
        } else {
            value = parse_decimal();
            if (peek() == '*') {
                take();
                if (!starts_with("sqrt(")) fail("expected sqrt( after '*'");
                value *= parse_sqrt();
            }
        }
        if (peek() == '/') {
            take();
            const double den = parse_decimal();
            if (den == 0.0) fail("division by zero");
            value /= den;
        }
        skip_ws();
        if (pos_ != s_.size()) fail(std::string("unexpected character '") + s_[pos_] + "'");
        if (!std::isfinite(value)) fail("value is not finite");
        return sign * value;
    }

private:
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char take() { return s_[pos_++]; }
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }
    bool starts_with(std::string_view p) const { return s_.substr(pos_, p.size()) == p; }

    [[noreturn]] void fail(const std::string& msg) const {
        config_error(field_, msg + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    double parse_decimal() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        if (pos_ == start) fail("expected a number");
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
        if (ec != std::errc() || ptr != s_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        return v;
    }

    double parse_sqrt() {
        pos_ += 5;  // "sqrt("
        const double arg = parse_decimal();
        if (peek() != ')') fail("expected ')'");
        take();
        return std::sqrt(arg);
    }

    std::string_view s_;
    std::string_view field_;
    std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- json helpers

json matrix_json(const Matrix& m) {
    json re = json::array(), im = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json rr = json::array(), ii = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            rr.push_back(m(r, c).real());
            ii.push_back(m(r, c).imag());
        }
        re.push_back(rr);
        im.push_back(ii);
    }
    return json{{"re", re}, {"im", im}};
}

json angle_json(double a) { return json{{"unwrapped", a}, {"mod_2pi", wrap_2pi(a)}}; }

json phases_json(const PhaseReport& r) {
    json states = json::array();
    for (const StatePhases& p : r.states) {
        states.push_back(json{{"eigenvalue", p.eigenvalue},
                              {"total", angle_json(p.total)},
                              {"dynamic", angle_json(p.dynamic)},
                              {"geometric", angle_json(p.geometric)}});
    }
    return states;
}

json drive_json(const SingleQubitDrive& d) {
    const MixingAngles a = mixing_angles(d);
    return json{{"family", "single"}, {"omega", d.omega},   {"omega1", d.omega1}, {"omega2", d.omega2},
                {"lambda", d.lambda()}, {"chi", a.chi},     {"theta", a.theta}};
}

json drive_json(const TwoQubitDrive& d) {
    return json{{"family", "two"},
                {"omega", d.omega},
                {"J", d.coupling},
                {"omega0", d.omega0},
                {"lambda1", d.lambda1()},
                {"lambda2", d.lambda2()},
                {"chi1", mixing_angles(d.block_drive(true)).chi},
                {"chi2", mixing_angles(d.block_drive(false)).chi}};
}

json gate_json(const GateResult& g) {
    json phases = json::array();
    for (double p : g.eigenphases()) phases.push_back(p);
    json j{{"cycles", g.cycles},
           {"eigenvalues", g.eigenvalues},
           {"eigenphases", phases},
           {"invariant_basis", matrix_json(g.invariant_basis)},
           {"computational_basis", matrix_json(g.computational_basis)},
           {"unitarity_defect", g.diagnostics.unitarity_defect},
           {"offdiag_leakage", g.diagnostics.offdiag_leakage}};
    if (g.computational_basis.dim() == 4) {
        j["block_leakage"] = g.diagnostics.block_leakage;
        j["computational_basis_paired_order"] = matrix_json(to_paired_order(g.computational_basis));
    }
    return j;
}

SimulationOptions sim_options(const RunConfig& c) {
    SimulationOptions o;
    o.grid_points = c.grid_points;
    o.steps = c.steps;
    o.method = PropagatorMethod::Numeric;
    return o;
}

bool two_qubit(const RunConfig& c) { return c.has("J") || c.has("omega0"); }

SingleQubitDrive single_drive(const RunConfig& c) {
    SingleQubitDrive d{c.value_or("omega", 1.0), c.value_or("omega1", 0.0), c.value_or("omega2", 0.0)};
    d.validate();
    return d;
}

TwoQubitDrive two_drive(const RunConfig& c) {
    TwoQubitDrive d{c.value_or("omega", 1.0), c.value_or("J", 0.0), c.value_or("omega0", 0.0)};
    d.validate();
    return d;
}

// ---------------------------------------------------------------- commands

template <class Drive>
void run_phases(const Drive& d, const RunConfig& c, Report& r) {
    const CycleSimulation sim = simulate_cycle(d, sim_options(c));
    r.results["drive"] = drive_json(d);
    r.results["states"] = phases_json(sim.phases());
    r.diagnostics["eigenvalue_drift"] = sim.frame.eigenvalue_drift();
    r.diagnostics["periodicity_defect"] = sim.frame.periodicity_defect();
    r.diagnostics["propagator_unitarity_defect"] = sim.propagator.max_unitarity_defect();
    r.diagnostics["steps"] = static_cast<long long>(sim.propagator.size() - 1) *
                             ((c.steps + c.grid_points - 1) / c.grid_points);
}

void run_phases(const RunConfig& c, Report& r) {
    if (two_qubit(c)) {
        run_phases(two_drive(c), c, r);
        return;
    }
    const SingleQubitDrive d = single_drive(c);
    run_phases(d, c, r);
    const ClosedFormPhases cf = closed_form_phases(d);
    json closed = json::array();
    for (std::size_t n = 0; n < 2; ++n) {
        closed.push_back(json{{"total", angle_json(cf.total[n])},
                              {"dynamic", angle_json(cf.dynamic[n])},
                              {"geometric", angle_json(cf.geometric[n])}});
    }
    r.results["closed_form"] = closed;
    if (d.omega2 > 0.0) r.results["constraint_lhs"] = elimination_constraint_single(d);
}

void run_gate(const RunConfig& c, Report& r) {
    if (two_qubit(c)) {
        const TwoQubitDrive d = two_drive(c);
        const CycleSimulation sim = simulate_cycle(d, sim_options(c));
        r.results["drive"] = drive_json(d);
        r.results["gate"] = gate_json(sim.gate(c.cycles));
        return;
    }
    const SingleQubitDrive d = single_drive(c);
    const CycleSimulation sim = simulate_cycle(d, sim_options(c));
    const GateResult g = sim.gate(c.cycles);
    r.results["drive"] = drive_json(d);
    r.results["gate"] = gate_json(g);
    const Matrix formula = matrix_power(computational_gate_formula(d), c.cycles);
    r.results["formula"] = matrix_json(formula);
    r.diagnostics["formula_fidelity"] = gate_fidelity(formula, g.computational_basis);
}

void run_solve(const RunConfig& c, Report& r) {
    const double omega = c.value_or("omega", 1.0);
    EliminationSolution s;
    if (c.has("gamma")) {
        s = synthesize_single_qubit_phase(omega, c.values.at("gamma"));
        r.results["mode"] = "synthesize";
    } else {
        s = solve_elimination_single(omega, c.K, c.value_or("omega1", 0.5 * omega), c.grid_points);
        r.results["mode"] = "eliminate";
    }
    r.results["drive"] = drive_json(s.drive);
    r.results["K"] = s.K;
    r.results["residual"] = s.residual;
    r.results["dynamic"] = json::array({angle_json(s.dynamic[0]), angle_json(s.dynamic[1])});
    r.results["geometric"] = json::array({angle_json(s.geometric[0]), angle_json(s.geometric[1])});
}

void run_controlled_u(const RunConfig& c, Report& r) {
    const TwoQubitDrive d = two_drive(c);
    const ControlledGateSpec s = build_controlled_u(d.omega, d.coupling, d.omega0, c.max_m, c.K, sim_options(c));
    r.results["drive"] = drive_json(d);
    r.results["K"] = s.K;
    r.results["m"] = s.cycles.m;
    r.results["N"] = s.cycles.N;
    r.results["lambda1_over_omega"] = s.cycles.ratio;
    r.results["lambda2_over_omega"] = d.lambda2() / d.omega;
    r.results["constraint_residual"] = s.constraint_residual;
    r.results["upper_fidelity"] = s.upper_fidelity;
    r.results["upper_deviation"] = s.upper_deviation;
    r.results["geometric"] = json::array({angle_json(s.geometric[0]), angle_json(s.geometric[1])});
    r.results["dynamic"] = json::array({angle_json(s.dynamic[0]), angle_json(s.dynamic[1])});
    r.results["target_phases"] = json::array({angle_json(s.target_phases[0]), angle_json(s.target_phases[1])});
    r.results["lower_eigenphases"] = json::array({s.lower_eigenphases[0], s.lower_eigenphases[1]});
    r.results["gate"] = gate_json(s.gate);
    r.diagnostics["formula_fidelity"] = s.formula_fidelity;
    r.diagnostics["max_phase_error"] = s.max_phase_error;
    r.diagnostics["cycle_approximation_error"] = s.cycles.approximation_error;
}

template <class Drive>
void run_verify(const Drive& d, double scale, const RunConfig& c, Report& r) {
    const double tau = d.period();
    const MatrixFn ham = hamiltonian_fn(d);
    const MatrixFn inv = invariant_fn(d);
    constexpr int kSamples = 64;

    double residual = 0.0;
    for (int k = 0; k < kSamples; ++k) {
        residual = std::max(residual, invariance_residual(ham, inv, tau * k / kSamples, 1e-5 * tau) / scale);
    }
    const int steps = ((std::max(c.steps, 1000) + kSamples - 1) / kSamples) * kSamples;
    const Propagator numeric = numeric_propagator(ham, tau, steps, steps / kSamples);
    double oracle = 0.0;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
        oracle = std::max(oracle, (numeric.unitaries[k] - analytic_propagator(d, numeric.times[k])).max_abs());
    }
    const CycleSimulation sim = simulate_cycle(d, sim_options(c));
    const GateResult g = sim.gate(1);

    json checks{
        {"invariance_residual", {{"value", residual}, {"limit", 1e-7}}},
        {"oracle_deviation", {{"value", oracle}, {"limit", 1e-8}}},
        {"eigenvalue_drift", {{"value", sim.frame.eigenvalue_drift() / scale}, {"limit", 1e-10}}},
        {"periodicity_defect", {{"value", sim.frame.periodicity_defect()}, {"limit", 1e-10}}},
        {"unitarity_defect", {{"value", sim.propagator.max_unitarity_defect()}, {"limit", 1e-10}}},
        {"offdiag_leakage", {{"value", g.diagnostics.offdiag_leakage}, {"limit", 1e-8}}},
    };
    if (g.computational_basis.dim() == 4) {
        double leak = 0.0;
        for (const Matrix& u : sim.propagator.unitaries) leak = std::max(leak, block_leakage(u));
        checks["block_leakage"] = {{"value", leak}, {"limit", 1e-8}};
    }
    bool passed = true;
    for (auto& [name, check] : checks.items()) {
        check["pass"] = check["value"].template get<double>() <= check["limit"].template get<double>();
        passed = passed && check["pass"].template get<bool>();
    }
    r.results["drive"] = drive_json(d);
    r.results["checks"] = checks;
    r.results["passed"] = passed;
}

void run_verify(const RunConfig& c, Report& r) {
    if (two_qubit(c)) {
        const TwoQubitDrive d = two_drive(c);
        run_verify(d, std::max(d.lambda1(), d.lambda2()), c, r);
    } else {
        const SingleQubitDrive d = single_drive(c);
        run_verify(d, d.lambda(), c, r);
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

// ---------------------------------------------------------------- config

double RunConfig::value_or(const std::string& key, double fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

void RunConfig::validate() const {
    if (grid_points < 64 || grid_points % 2 != 0) config_error("--grid-points", "must be even and >= 64");
    if (steps < 1000) config_error("--steps", "must be >= 1000");
    if (cycles < 1) config_error("--cycles", "must be >= 1");
    if (max_m < 1) config_error("--max-m", "must be >= 1");
    if (has("omega") && !(values.at("omega") > 0.0)) config_error("--omega", "must be positive");
    for (const char* key : {"omega1", "omega2", "omega0"}) {
        if (has(key) && values.at(key) < 0.0) config_error(std::string("--") + key, "must be >= 0");
    }
    if (command == Command::ControlledU && !has("J")) config_error("--J", "required for controlled-u");
    if (command == Command::Sweep) {
        if (axis != "omega" && axis != "omega1" && axis != "omega2") {
            config_error("--axis", "must be one of omega, omega1, omega2");
        }
        if (on_circle && axis != "omega1") config_error("--on-circle", "only valid with --axis omega1");
        for (double v : sweep_values)
            if (!std::isfinite(v)) config_error("--values", "values must be finite");
    }
}

json RunConfig::echo() const {
    json j{{"command", std::string(command_name(command))},
           {"inputs", inputs},
           {"values", values},
           {"grid_points", grid_points},
           {"steps", steps},
           {"cycles", cycles},
           {"max_m", max_m},
           {"K", K},
           {"format", format == Format::Json ? "json" : "csv"}};
    if (command == Command::Sweep) {
        j["axis"] = axis;
        j["sweep_values"] = sweep_values;
        j["on_circle"] = on_circle;
    }
    return j;
}

double parse_number(std::string_view text, std::string_view field) { return NumberParser(text, field).parse(); }

std::vector<double> parse_number_list(std::string_view text, std::string_view field) {
    std::vector<double> out;
    if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        out.push_back(parse_number(text.substr(start, comma - start), field));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------- report

json to_json(const Report& r) {
    json j{{"schema_version", r.schema_version}, {"command", r.command}, {"config", r.config},
           {"status", r.status},                 {"results", r.results}, {"diagnostics", r.diagnostics}};
    if (r.error) j["error"] = *r.error;
    if (r.timestamp) j["timestamp"] = *r.timestamp;
    return j;
}

Report report_from_json(const json& j) try {
    Report r;
    r.schema_version = j.at("schema_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.config = j.at("config");
    r.status = j.at("status").get<std::string>();
    r.results = j.at("results");
    r.diagnostics = j.at("diagnostics");
    if (j.contains("error")) r.error = j.at("error");
    if (j.contains("timestamp")) r.timestamp = j.at("timestamp").get<std::string>();
    return r;
} catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParseError, std::string("report: ") + e.what());
}

std::string serialize(const Report& r) { return to_json(r).dump(2) + "\n"; }

Report parse_report(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ConfigParseError, std::string("report: ") + e.what());
    }
    return report_from_json(j);
}

namespace {

constexpr const char* kSweepColumns[] = {
    "lambda",         "chi",          "theta",          "dynamic_plus",       "dynamic_minus",
    "geometric_plus", "geometric_minus", "geometric_plus_mod", "geometric_minus_mod", "total_plus",
    "total_minus",    "constraint_residual"};

struct SweepRow {
    SingleQubitDrive drive;
    std::optional<std::array<double, 12>> fields;
    std::string error;
};

std::vector<SweepRow> sweep_rows(const RunConfig& config) {
    config.validate();
    SimulationOptions opts;
    opts.grid_points = config.grid_points;
    opts.method = PropagatorMethod::Analytic;

    std::vector<SweepRow> rows;
    for (double v : config.sweep_values) {
        SweepRow row;
        SingleQubitDrive& d = row.drive;
        d = {config.value_or("omega", 1.0), config.value_or("omega1", 0.0), config.value_or("omega2", 0.0)};
        if (config.axis == "omega") d.omega = v;
        if (config.axis == "omega1") d.omega1 = v;
        if (config.axis == "omega2") d.omega2 = v;
        if (config.on_circle) d.omega2 = std::sqrt(std::max(0.0, d.omega * d.omega1 - d.omega1 * d.omega1));
        try {
            d.validate();
            const PhaseReport p = simulate_cycle(d, opts).phases();
            const MixingAngles a = mixing_angles(d);
            const double residual = elimination_constraint_single(d) - elimination_target(d.omega, config.K);
            const StatePhases& up = p.states[0];
            const StatePhases& dn = p.states[1];
            row.fields = std::array<double, 12>{d.lambda(),      a.chi,           a.theta,
                                                up.dynamic,      dn.dynamic,      up.geometric,
                                                dn.geometric,    up.geometric_mod(), dn.geometric_mod(),
                                                up.total,        dn.total,        residual};
        } catch (const Error& e) {
            row.error = error_code_name(e.code());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json sweep_json(const RunConfig& config) {
    json out = json::array();
    const std::vector<SweepRow> rows = sweep_rows(config);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& row = rows[i];
        json j{{"index", i}, {"omega", row.drive.omega}, {"omega1", row.drive.omega1}, {"omega2", row.drive.omega2}};
        for (std::size_t k = 0; k < 12; ++k) j[kSweepColumns[k]] = row.fields ? json((*row.fields)[k]) : json(nullptr);
        j["error"] = row.error.empty() ? json(nullptr) : json(row.error);
        out.push_back(j);
    }
    return out;
}

}  // namespace

Report run(const RunConfig& config) {
    Report r;
    r.command = std::string(command_name(config.command));
    r.config = config.echo();
    const auto start = std::chrono::steady_clock::now();
    try {
        config.validate();
        switch (config.command) {
            case Command::Verify: run_verify(config, r); break;
            case Command::Phases: run_phases(config, r); break;
            case Command::Gate: run_gate(config, r); break;
            case Command::Solve: run_solve(config, r); break;
            case Command::ControlledU: run_controlled_u(config, r); break;
            case Command::Sweep:
                r.results["axis"] = config.axis;
                r.results["rows"] = sweep_json(config);
                break;
        }
    } catch (const Error& e) {
        r.status = "error";
        r.results = json::object();
        r.error = json{{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    }
    if (config.timestamp) {
        r.timestamp = utc_now();
        r.diagnostics["runtime_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return r;
}

std::string sweep_csv(const RunConfig& config) {
    const std::vector<SweepRow> rows = sweep_rows(config);
    std::ostringstream out;
    out << "index,omega,omega1,omega2";
    for (const char* c : kSweepColumns) out << ',' << c;
    out << ",error\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& row = rows[i];
        out << i << ',' << fmt17(row.drive.omega) << ',' << fmt17(row.drive.omega1) << ',' << fmt17(row.drive.omega2);
        for (std::size_t k = 0; k < 12; ++k) {
            out << ',';
            if (row.fields) out << fmt17((*row.fields)[k]);
        }
        out << ',' << row.error << '\n';
    }
    return out.str();
}

int exit_status(const Report& r) {
    if (r.status != "error" || !r.error) return 0;
    const std::string code = r.error->at("code").get<std::string>();
    for (int c = 0; c <= static_cast<int>(ErrorCode::ConfigParseError); ++c) {
        if (error_code_name(static_cast<ErrorCode>(c)) == code) return error_exit_status(static_cast<ErrorCode>(c));
    }
    return 1;
}

// ---------------------------------------------------------------- argv

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
    CLI::App app{"Geometric gates from periodic Lewis-Riesenfeld invariants", "lrgate_cli"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::map<std::string, std::string> text;
    for (const char* key : {"omega", "omega1", "omega2", "J", "omega0", "gamma"}) {
        app.add_option(std::string("--") + key, text[key], std::string("drive parameter ") + key);
    }
    RunConfig c;
    std::string format = "json", output;
    app.add_option("--grid-points", c.grid_points, "frame grid intervals per cycle (even, >= 64)");
    app.add_option("--steps", c.steps, "integrator steps per cycle (>= 1000)");
    app.add_option("--cycles", c.cycles, "number of drive cycles for gate");
    app.add_option("--max-m", c.max_m, "largest cycle count tried by controlled-u");
    app.add_option("--K", c.K, "dynamic phase winding integer");
    app.add_option("--format", format, "json or csv");
    app.add_option("--output", output, "write the report to PATH");
    app.add_flag("--no-timestamp", "omit timestamp and runtime fields");
    app.add_option("--axis", c.axis, "sweep axis: omega, omega1, omega2");
    app.add_option("--values", c.sweep_text, "comma-separated sweep values");
    app.add_flag("--on-circle", c.on_circle, "sweep omega1 along the K = 0 circle");

    struct Sub {
        const char* name;
        Command command;
        const char* help;
    };
    const Sub subs[] = {
        {"verify", Command::Verify, "self-checks on one drive"},
        {"phases", Command::Phases, "total, dynamic and geometric phases over one cycle"},
        {"gate", Command::Gate, "cyclic gate after --cycles periods"},
        {"solve", Command::Solve, "dynamic phase elimination, or --gamma synthesis"},
        {"controlled-u", Command::ControlledU, "two-qubit controlled gate from (omega, J, omega0)"},
        {"sweep", Command::Sweep, "phase table along one drive parameter"}};
    std::vector<CLI::App*> handles;
    for (const Sub& s : subs) handles.push_back(app.add_subcommand(s.name, s.help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw Error(ErrorCode::ConfigParseError, e.what());
    }

    for (std::size_t i = 0; i < handles.size(); ++i)
        if (handles[i]->parsed()) c.command = subs[i].command;
    for (const auto& [key, t] : text) {
        if (app.count("--" + key) == 0) continue;
        c.inputs[key] = t;
        c.values[key] = parse_number(t, "--" + key);
    }
    c.timestamp = app.count("--no-timestamp") == 0;
    if (!output.empty()) c.output_path = output;
    if (format == "json") {
        c.format = Format::Json;
    } else if (format == "csv") {
        c.format = Format::Csv;
    } else {
        config_error("--format", "must be json or csv, got '" + format + "'");
    }
    if (c.command == Command::Sweep) {
        if (app.count("--format") == 0) c.format = Format::Csv;
        c.sweep_values = parse_number_list(c.sweep_text, "--values");
    }
    c.validate();
    return c;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> config;
    try {
        config = parse_args(argc, argv, out);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return error_exit_status(e.code());
    }
    if (!config) return 0;

    std::string payload;
    int status = 0;
    if (config->command == Command::Sweep && config->format == Format::Csv) {
        try {
            payload = sweep_csv(*config);
        } catch (const Error& e) {
            err << e.what() << '\n';
            return error_exit_status(e.code());
        }
    } else {
        const Report r = run(*config);
        payload = serialize(r);
        status = exit_status(r);
        if (r.error) err << r.error->at("message").get<std::string>() << '\n';
    }

    if (config->output_path) {
        std::ofstream f(*config->output_path, std::ios::binary);
        if (!f) {
            err << "cannot open " << *config->output_path << '\n';
            return 1;
        }
        f << payload;
    } else {
        out << payload;
    }
    return status;
}

}  // namespace lrgate::cli
