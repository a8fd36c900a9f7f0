#pragma once

#include "diraclab/errors.hpp"
#include "diraclab/harness.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace diraclab {

class UsageError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

struct RunConfig {
    std::string command;
    std::string config_path;
    std::string output_dir = "dirac-lab-out";
    int threads = 1;
    bool timing = true;
    std::vector<double> factors;
    std::vector<double> snapshot_times;
    long sample_every = 1;
};

struct ParsedConfig {
    RunConfig run;
    ExperimentSpec spec;
    nlohmann::json resolved;  // canonical nested form, re-usable as --config
};

/// Parses `dirac-lab <command> [flags]` (args excludes the program name). Defaults, then
/// the --config file, then flags. Throws UsageError naming the offending field.
ParsedConfig parse_config(const std::vector<std::string>& args);

/// Builds a ParsedConfig from an already resolved JSON object.
ParsedConfig config_from_json(const std::string& command, const nlohmann::json& resolved);

/// "0.5", "1/16", "1e-3" -> double.
double parse_number(const std::string& s, const std::string& field);

int solve_command(const ParsedConfig& cfg);
int converge_command(const ParsedConfig& cfg);
int stability_command(const ParsedConfig& cfg);
int honeycomb_command(const ParsedConfig& cfg);

/// Full entry point; returns the process exit code.
int run_cli(int argc, char** argv);

} // namespace diraclab
