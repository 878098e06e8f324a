#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cyberlab/allocate.hpp"
#include "cyberlab/centrality.hpp"
#include "cyberlab/generators.hpp"
#include "cyberlab/graph.hpp"
#include "cyberlab/risk_allocation.hpp"
#include "cyberlab/topoctl.hpp"

namespace cyberlab::lab {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` text. Keys may contain dots; `#` starts a comment.
class KeyValues {
  public:
    static KeyValues parse(std::istream& in, std::string_view origin = "<config>");
    static KeyValues load(const std::filesystem::path& path);

    void set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }
    [[nodiscard]] bool has(const std::string& key) const { return entries_.count(key) != 0; }
    [[nodiscard]] const std::map<std::string, std::string>& entries() const { return entries_; }

    [[nodiscard]] std::string str(const std::string& key, std::string fallback) const;
    [[nodiscard]] std::string str(const std::string& key) const;
    [[nodiscard]] double real(const std::string& key, double fallback) const;
    [[nodiscard]] double real(const std::string& key) const;
    [[nodiscard]] std::uint64_t count(const std::string& key, std::uint64_t fallback) const;
    [[nodiscard]] std::uint64_t count(const std::string& key) const;
    [[nodiscard]] bool flag(const std::string& key, bool fallback) const;
    [[nodiscard]] std::vector<double> reals(const std::string& key, std::vector<double> fallback) const;
    [[nodiscard]] std::vector<std::string> list(const std::string& key, std::vector<std::string> fallback) const;

    /// Keys never read through an accessor.
    [[nodiscard]] std::vector<std::string> unread() const;

  private:
    const std::string* find(const std::string& key) const;

    std::map<std::string, std::string> entries_;
    mutable std::set<std::string> read_;
};

enum class ExperimentKind {
    game,
    allocation,
    phase_transition,
    heterogeneity,
    edge_removal,
    node_splitting,
    premiums,
    oracle_suite,
};

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(std::string_view name);

struct GraphSpec {
    enum class Source { erdos_renyi, barabasi_albert, fixture, path, complete, edge_list };
    Source source = Source::erdos_renyi;
    std::size_t n = 50;
    double p = 0.16;
    std::size_t m = 4;
    Fixture fixture = Fixture::tree8;
    std::filesystem::path file;
    std::optional<Seed> seed;  // defaults to the experiment seed

    [[nodiscard]] Graph build(Seed fallback) const;
    [[nodiscard]] std::string describe() const;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::game;
    GraphSpec graph;
    double tau = 0.1;
    double gamma = 1.0;
    std::uint64_t runs = 10'000;
    Seed seed{1};
    unsigned threads = 1;
    std::filesystem::path output = "out";

    // game and allocation
    double k = 1.0 / 3.0;
    std::size_t rounds = 50;
    double gamma0 = 0.1;
    bool exact = false;
    double tolerance = 0.0;  // 0 selects the estimator default
    bool sequential = false;
    double budget = 5.0;
    std::vector<AllocationStrategy> strategies;
    std::vector<CentralityKind> centralities;
    double fraction = 0.1;

    // epidemic experiments
    std::vector<double> p_values;
    bool resample = true;
    double compare_p = 0.01;
    PandemicCriterion criterion;

    // interventions and premiums
    std::uint64_t check_runs = 10'000;
    std::uint64_t confirm_runs = 100'000;
    std::size_t batch = 0;
    CentralityKind centrality = CentralityKind::degree;
    SplitRule rule = SplitRule::alternating;
    std::size_t max_splits = 200;
    bool random_baseline = false;
    double random_step = 0.01;
    ExperimentKind intervention = ExperimentKind::edge_removal;
    RiskSpec risk;
    double pool = -1.0;  // < 0 means "use the risk capital"
    double base_premium = 0.0;

    // oracle suite
    std::size_t instances = 20;
    std::size_t max_nodes = 4;

    /// The key/value pairs the config was built from.
    std::map<std::string, std::string> echo;
};

/// Validates and converts; unknown or inapplicable keys raise ConfigError.
ExperimentConfig make_config(const KeyValues& kv);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace cyberlab::lab
