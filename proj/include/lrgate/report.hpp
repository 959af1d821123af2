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

// Command-line front end: run configuration, dispatch, JSON reports and
// CSV sweep tables.

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace lrgate::cli {

using json = nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "1.0";

enum class Command { Verify, Phases, Gate, Solve, ControlledU, Sweep };
enum class Format { Json, Csv };

std::string_view command_name(Command c);

struct RunConfig {
    Command command = Command::Phases;
    /// Numeric drive inputs keyed by flag name without dashes
    /// (omega, omega1, omega2, J, omega0, gamma). Text is kept for the echo.
    std::map<std::string, std::string> inputs;
    std::map<std::string, double> values;
    int grid_points = 4096;
    int steps = 100000;
    int cycles = 1;
    int max_m = 64;
    int K = 0;
    std::string axis;                 // sweep only
    std::vector<double> sweep_values; // sweep only
    std::string sweep_text;
    bool on_circle = false;           // sweep omega1 along w1^2 + w2^2 = w w1
    Format format = Format::Json;
    std::optional<std::string> output_path;
    bool timestamp = true;

    bool has(const std::string& key) const { return values.count(key) != 0; }
    double value_or(const std::string& key, double fallback) const;

    /// Type-level checks (grid even and >= 64, steps >= 1000, cycles >= 1,
    /// non-negative frequencies). Throws ConfigParseError.
    void validate() const;
    json echo() const;
};

/// Restricted exact-entry grammar: decimal, a/b, a*sqrt(b), a*sqrt(b)/c,
/// sqrt(b)/c, each with an optional sign. Throws ConfigParseError naming
/// the field and the offending position.
double parse_number(std::string_view text, std::string_view field);

/// Comma-separated list of parse_number values; empty text gives an empty list.
std::vector<double> parse_number_list(std::string_view text, std::string_view field);

struct Report {
    std::string schema_version{kSchemaVersion};
    std::string command;
    json config = json::object();
    std::string status = "ok";  // ok | error
    json results = json::object();
    json diagnostics = json::object();
    std::optional<json> error;  // {code, message}
    std::optional<std::string> timestamp;

    bool operator==(const Report&) const = default;
};

json to_json(const Report& r);
Report report_from_json(const json& j);
/// Pretty JSON with a trailing newline.
std::string serialize(const Report& r);
Report parse_report(std::string_view text);

/// Dispatch to the library. Module errors become status = "error" with the
/// machine-readable code; they are not rethrown.
Report run(const RunConfig& config);

/// One row per sweep value; failed points carry the error code in the
/// last column. '.' decimals, ',' separators, LF endings, 17 significant digits.
std::string sweep_csv(const RunConfig& config);

/// Exit status for a finished report (0 unless status is "error").
int exit_status(const Report& r);

/// Parse argv into a RunConfig. Throws ConfigParseError. Returns nullopt
/// when help was requested (text already written to out).
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Full CLI: parse, run, write, return the process exit status.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lrgate::cli
