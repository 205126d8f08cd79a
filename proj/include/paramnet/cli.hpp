#pragma once

#include "paramnet/scattering.hpp"

#include <optional>
#include <string>
#include <vector>

namespace paramnet::cli {

// exit codes: 0 ok, 1 usage, 2 parse/validation, 3 numeric failure
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNumeric = 3;

struct RunConfig {
    enum class Command {
        compile, scatter, gain, noise, squeeze, stability,
        direction, gbw, rwa_compare, eliminate
    };
    enum class Format { csv, json };

    Command command = Command::compile;
    std::string input_path;
    std::string output_path;           // empty = stdout
    Format format = Format::csv;

    // frequency grid; NaN bounds resolve to omega' = 2 omega / kappa_max in [-5, 5]
    double omega_min = std::numeric_limits<double>::quiet_NaN();
    double omega_max = std::numeric_limits<double>::quiet_NaN();
    int points = 2001;

    std::string sweep_path;            // dotted path into the JSON document
    std::vector<double> sweep_values;

    // path ends, syntax: "mode", "mode^" (creation row), "mode.X", "mode.P"
    std::string in_spec, out_spec;
    std::string port_spec;             // noise
    std::string squeezed_spec;         // squeeze
    std::string fwd_in, fwd_out, rev_in, rev_out;  // direction
    std::string mode_label;            // eliminate

    double t_end = 0.0, dt = 0.0;      // rwa-compare
    std::string trajectory_path;       // optional full-trajectory CSV
};

// Parses "mode", "mode^", "mode.X", "mode.P".
scattering::PathEnd parse_path_end(const std::string& text);

// Executes one command; diagnostics go to `err`. Returns an exit code.
int run(const RunConfig& config, std::ostream& err);

// Full command-line entry: parses argv (without the program name) and runs.
int main_from_args(const std::vector<std::string>& args, std::ostream& out,
                   std::ostream& err);

std::string sha256_hex(const std::string& data);

// Thread cap for sweep evaluation, from PARAMNET_THREADS (>= 1).
int thread_budget();

}  // namespace paramnet::cli
