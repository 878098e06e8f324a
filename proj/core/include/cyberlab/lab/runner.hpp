#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyberlab/graph.hpp"
#include "cyberlab/lab/config.hpp"

namespace cyberlab::lab {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 1,
    kExitRuntimeError = 2,
    kExitCheckFailed = 3,
};

struct StageTiming {
    std::string name;
    double seconds = 0.0;
};

struct Metric {
    std::string name;
    double value = 0.0;
    std::optional<double> reference;  // published value for comparison, if any
};

struct RunOutcome {
    int exit_code = kExitOk;
    std::vector<std::string> outputs;  // relative to the output directory
    std::vector<StageTiming> stages;
    std::vector<Metric> metrics;
    double wall_seconds = 0.0;
};

/// Runs one experiment and writes its result files into cfg.output.
/// Throws ConfigError for invalid setups and std::exception for runtime failures.
RunOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// Writes `manifest.json` (config echo, version, timings, outputs, metrics)
/// through a temporary file and a rename.
void write_manifest(const ExperimentConfig& cfg, const RunOutcome& outcome);

/// Loads a config file, or the config recorded in a manifest.json, applies
/// `overrides` on top and runs it. Returns the process exit code.
int run_file(const std::filesystem::path& path, const KeyValues& overrides, std::ostream& log, std::ostream& err);

/// Runs an already assembled key/value set (used by the CLI verbs).
int run_values(const KeyValues& kv, std::ostream& log, std::ostream& err);

struct OracleRow {
    std::size_t instance = 0;
    std::size_t nodes = 0;
    double tau = 0.0;
    NodeId node = 0;
    double gamma = 0.0;
    double exact = 0.0;
    double estimate = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// Exact-versus-sampled infection probabilities on random small graphs with
/// random rates. A node passes when |estimate - exact| <= 4 sqrt(P(1-P)/runs).
std::vector<OracleRow> oracle_suite(std::size_t instances, std::size_t max_nodes, std::uint64_t runs, Seed seed,
                                    unsigned threads = 1);

}  // namespace cyberlab::lab
