// cli.hpp — Run configuration, flag parsing, and command dispatch for the
// zeno-cli tool. Exit codes: 0 success, 2 bad flags/config, 3 numerical
// contract violation, 4 I/O failure.

#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zeno::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by parse_config when --help is requested; carries the help text.
struct HelpRequested {
    std::string text;
};

enum class Command { partition, pulsed, continuous, limit, sweep, darkspace, decay };
enum class ModelKind { three_level, four_level, cavity, decay, custom_file };
enum class OutputFormat { csv, json };

struct RunConfig {
    Command command{Command::continuous};
    ModelKind model{ModelKind::three_level};
    std::map<std::string, double> parameters;  // resolved model parameters
    double t_max{10.0};
    int samples{200};
    int steps{16};                   // measurement count N for pulsed runs
    std::string sweep_param;         // "K" or "N"
    std::vector<double> sweep_values;
    std::string system_file, meas_file;
    std::string output_path;
    OutputFormat format{OutputFormat::csv};
    std::optional<std::pair<double, double>> fit_window;
};

// Parse flags (natural order, without the program name) plus an optional
// --config file; flags override file values. Throws ConfigError on unknown
// flags, type mismatches, missing required parameters, or invariant
// violations (samples >= 2, t_max > 0, ascending sweep values).
RunConfig parse_config(std::vector<std::string> args);

// Execute one run: writes the output file when --output was given and prints a
// one-line summary to `out`. Returns 0; throws on numerical or I/O failure.
int run(const RunConfig& config, std::ostream& out);

// main() wrapper implementing the exit-code contract
int main_entry(int argc, char** argv);

const char* model_name(ModelKind m);

}  // namespace zeno::cli
