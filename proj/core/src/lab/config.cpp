#include "cyberlab/lab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cyberlab/graph_io.hpp"

namespace cyberlab::lab {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ConfigError("'" + key + "': expected a number, got '" + text + "'");
    }
    return v;
}

std::uint64_t to_count(const std::string& key, const std::string& text) {
    const double v = to_real(key, text);
    if (v < 0.0 || v != std::floor(v) || v > 1.8e19) {
        throw ConfigError("'" + key + "': expected a non-negative integer, got '" + text + "'");
    }
    return static_cast<std::uint64_t>(v);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto t = trim(item);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

template <class F>
auto convert(const std::string& key, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("'" + key + "': " + e.what());
    }
}

}  // namespace

KeyValues KeyValues::parse(std::istream& in, std::string_view origin) {
    KeyValues kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        auto key = trim(std::string_view(body).substr(0, eq));
        auto value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": empty key");
        if (kv.has(key)) {
            throw ConfigError(std::string(origin) + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        }
        kv.entries_.emplace(std::move(key), std::move(value));
    }
    return kv;
}

KeyValues KeyValues::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
    return parse(in, path.string());
}

const std::string* KeyValues::find(const std::string& key) const {
    read_.insert(key);
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

std::string KeyValues::str(const std::string& key, std::string fallback) const {
    const auto* v = find(key);
    return v ? *v : std::move(fallback);
}

std::string KeyValues::str(const std::string& key) const {
    const auto* v = find(key);
    if (!v) throw ConfigError("missing required key '" + key + "'");
    return *v;
}

double KeyValues::real(const std::string& key, double fallback) const {
    const auto* v = find(key);
    return v ? to_real(key, *v) : fallback;
}

double KeyValues::real(const std::string& key) const { return to_real(key, str(key)); }

std::uint64_t KeyValues::count(const std::string& key, std::uint64_t fallback) const {
    const auto* v = find(key);
    return v ? to_count(key, *v) : fallback;
}

std::uint64_t KeyValues::count(const std::string& key) const { return to_count(key, str(key)); }

bool KeyValues::flag(const std::string& key, bool fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError("'" + key + "': expected true/false, got '" + *v + "'");
}

std::vector<double> KeyValues::reals(const std::string& key, std::vector<double> fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    std::vector<double> out;
    for (const auto& item : split_list(*v)) out.push_back(to_real(key, item));
    return out;
}

std::vector<std::string> KeyValues::list(const std::string& key, std::vector<std::string> fallback) const {
    const auto* v = find(key);
    return v ? split_list(*v) : std::move(fallback);
}

std::vector<std::string> KeyValues::unread() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) {
        if (!read_.count(k)) out.push_back(k);
    }
    return out;
}

std::string_view to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::game: return "game";
        case ExperimentKind::allocation: return "allocation";
        case ExperimentKind::phase_transition: return "phase_transition";
        case ExperimentKind::heterogeneity: return "heterogeneity";
        case ExperimentKind::edge_removal: return "edge_removal";
        case ExperimentKind::node_splitting: return "node_splitting";
        case ExperimentKind::premiums: return "premiums";
        case ExperimentKind::oracle_suite: return "oracle_suite";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
    for (auto k : {ExperimentKind::game, ExperimentKind::allocation, ExperimentKind::phase_transition,
                   ExperimentKind::heterogeneity, ExperimentKind::edge_removal, ExperimentKind::node_splitting,
                   ExperimentKind::premiums, ExperimentKind::oracle_suite}) {
        if (name == to_string(k)) return k;
    }
    throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

Graph GraphSpec::build(Seed fallback) const {
    const Seed s = seed.value_or(fallback);
    switch (source) {
        case Source::erdos_renyi: return erdos_renyi(n, p, s);
        case Source::barabasi_albert: return barabasi_albert(n, m, s);
        case Source::fixture: return cyberlab::fixture(fixture);
        case Source::path: return path_graph(n);
        case Source::complete: return complete_graph(n);
        case Source::edge_list: return load_edge_list(file);
    }
    throw std::logic_error("unhandled graph source");
}

std::string GraphSpec::describe() const {
    std::ostringstream os;
    switch (source) {
        case Source::erdos_renyi: os << "ER(" << n << ", " << p << ")"; break;
        case Source::barabasi_albert: os << "BA(" << n << ", " << m << ")"; break;
        case Source::fixture: os << "fixture " << (fixture == Fixture::tree8 ? "tree8" : fixture == Fixture::star8 ? "star8" : "complete8"); break;
        case Source::path: os << "path(" << n << ")"; break;
        case Source::complete: os << "complete(" << n << ")"; break;
        case Source::edge_list: os << "edge list " << file.string(); break;
    }
    return os.str();
}

namespace {

GraphSpec read_graph(const KeyValues& kv, const std::string& prefix, GraphSpec spec) {
    const auto gen = kv.str(prefix + "generator", "");
    if (gen.empty() && !kv.has(prefix + "n")) return spec;
    if (gen == "er" || gen == "erdos_renyi") {
        spec.source = GraphSpec::Source::erdos_renyi;
    } else if (gen == "ba" || gen == "barabasi_albert") {
        spec.source = GraphSpec::Source::barabasi_albert;
    } else if (gen == "fixture") {
        spec.source = GraphSpec::Source::fixture;
    } else if (gen == "path") {
        spec.source = GraphSpec::Source::path;
    } else if (gen == "complete") {
        spec.source = GraphSpec::Source::complete;
    } else if (gen == "edge_list") {
        spec.source = GraphSpec::Source::edge_list;
    } else if (!gen.empty()) {
        throw ConfigError("'" + prefix + "generator': unknown generator '" + gen + "'");
    }
    using S = GraphSpec::Source;
    if (spec.source == S::erdos_renyi || spec.source == S::barabasi_albert || spec.source == S::path ||
        spec.source == S::complete) {
        spec.n = kv.count(prefix + "n", spec.n);
        if (spec.n < 1) throw ConfigError("'" + prefix + "n' must be >= 1");
    }
    if (spec.source == S::erdos_renyi) {
        spec.p = kv.real(prefix + "p", spec.p);
        if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw ConfigError("'" + prefix + "p' must lie in [0, 1]");
    }
    if (spec.source == S::barabasi_albert) {
        spec.m = kv.count(prefix + "m", spec.m);
        if (spec.m < 1 || spec.m > spec.n) throw ConfigError("'" + prefix + "m' must satisfy 1 <= m <= n");
    }
    if (spec.source == S::fixture) {
        const auto name = kv.str(prefix + "fixture");
        spec.fixture = convert(prefix + "fixture", [&] { return parse_fixture(name); });
    }
    if (spec.source == S::edge_list) spec.file = kv.str(prefix + "file");
    if (kv.has(prefix + "seed")) spec.seed = Seed{kv.count(prefix + "seed")};
    return spec;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

ExperimentConfig make_config(const KeyValues& kv) {
    ExperimentConfig c;
    c.kind = parse_experiment_kind(kv.str("experiment"));
    if (!kv.has("seed")) throw ConfigError("missing required key 'seed'");
    c.seed = Seed{kv.count("seed")};
    c.threads = static_cast<unsigned>(kv.count("threads", 1));
    c.output = kv.str("output", "out");
    c.echo = kv.entries();

    const bool epidemic_kind = c.kind == ExperimentKind::phase_transition || c.kind == ExperimentKind::heterogeneity ||
                               c.kind == ExperimentKind::edge_removal || c.kind == ExperimentKind::node_splitting ||
                               c.kind == ExperimentKind::premiums;
    const bool game_kind = c.kind == ExperimentKind::game || c.kind == ExperimentKind::allocation;

    if (game_kind) {
        c.runs = kv.count("runs", 100'000);
        c.tau = kv.real("epidemic.tau", 0.1);
        c.graph = read_graph(kv, "graph.", c.graph);
        c.k = kv.real("game.k", c.k);
        c.rounds = kv.count("game.rounds", c.rounds);
        c.gamma0 = kv.real("game.gamma0", c.gamma0);
        const auto mode = kv.str("game.mode", "monte_carlo");
        require(mode == "exact" || mode == "monte_carlo", "'game.mode' must be exact or monte_carlo");
        c.exact = mode == "exact";
        c.tolerance = kv.real("game.tolerance", 0.0);
        c.sequential = kv.flag("game.sequential", false);
        require(c.k > 0.0, "'game.k' must be > 0");
        require(c.gamma0 > 0.0, "'game.gamma0' must be > 0");
        require(c.rounds >= 1, "'game.rounds' must be >= 1");
    }
    if (c.kind == ExperimentKind::allocation) {
        c.budget = kv.real("allocation.budget", c.budget);
        require(c.budget > 0.0, "'allocation.budget' must be > 0");
        for (const auto& s : kv.list("allocation.strategies", {"untargeted", "upper", "lower"})) {
            c.strategies.push_back(convert("allocation.strategies", [&] { return parse_allocation_strategy(s); }));
        }
        for (const auto& s : kv.list("allocation.centralities", {"degree", "betweenness", "investment"})) {
            c.centralities.push_back(convert("allocation.centralities", [&] { return parse_centrality_kind(s); }));
        }
        c.fraction = kv.real("allocation.fraction", c.fraction);
        require(c.fraction > 0.0 && c.fraction <= 1.0, "'allocation.fraction' must lie in (0, 1]");
    }
    if (epidemic_kind) {
        c.runs = kv.count("runs", 10'000);
        c.tau = kv.real("epidemic.tau", 0.1);
        c.gamma = kv.real("epidemic.gamma", 1.0);
        require(c.tau >= 0.0, "'epidemic.tau' must be >= 0");
        require(c.gamma > 0.0, "'epidemic.gamma' must be > 0");
        c.criterion.size_fraction = kv.real("pandemic.q", c.criterion.size_fraction);
        c.criterion.frequency = kv.real("pandemic.epsilon", c.criterion.frequency);
        require(c.criterion.size_fraction > 0.0 && c.criterion.size_fraction < 1.0, "'pandemic.q' must lie in (0, 1)");
        require(c.criterion.frequency > 0.0 && c.criterion.frequency < 1.0, "'pandemic.epsilon' must lie in (0, 1)");
    }
    if (c.kind == ExperimentKind::phase_transition) {
        c.graph.source = GraphSpec::Source::erdos_renyi;
        c.graph.n = kv.count("graph.n", 1000);
        c.p_values = kv.reals("phase.p_values", {0.010, 0.011, 0.012, 0.013, 0.014});
        c.resample = kv.flag("phase.resample", true);
        require(!c.p_values.empty(), "'phase.p_values' must not be empty");
        for (double p : c.p_values) require(p >= 0.0 && p <= 1.0, "'phase.p_values' entries must lie in [0, 1]");
    }
    if (c.kind == ExperimentKind::heterogeneity) {
        c.graph.source = GraphSpec::Source::barabasi_albert;
        c.graph.n = kv.count("graph.n", 1000);
        c.graph.m = kv.count("graph.m", 5);
        require(c.graph.m >= 1 && c.graph.m <= c.graph.n, "'graph.m' must satisfy 1 <= m <= n");
        c.compare_p = kv.real("heterogeneity.compare_p", c.compare_p);
        require(c.compare_p >= 0.0 && c.compare_p <= 1.0, "'heterogeneity.compare_p' must lie in [0, 1]");
    }
    const bool intervention_kind = c.kind == ExperimentKind::edge_removal || c.kind == ExperimentKind::node_splitting ||
                                   c.kind == ExperimentKind::premiums;
    if (intervention_kind) {
        GraphSpec ba;
        ba.source = GraphSpec::Source::barabasi_albert;
        ba.n = 1000;
        ba.m = 5;
        c.graph = read_graph(kv, "graph.", ba);
        c.check_runs = kv.count("intervention.check_runs", c.runs);
        c.confirm_runs = kv.count("intervention.confirm_runs", c.confirm_runs);
        require(c.check_runs >= 1, "'intervention.check_runs' must be >= 1");
        if (c.kind == ExperimentKind::premiums) {
            c.intervention = parse_experiment_kind(kv.str("premiums.intervention", "edge_removal"));
            require(c.intervention == ExperimentKind::edge_removal || c.intervention == ExperimentKind::node_splitting,
                    "'premiums.intervention' must be edge_removal or node_splitting");
        } else {
            c.intervention = c.kind;
        }
        if (c.intervention == ExperimentKind::edge_removal) {
            c.batch = kv.count("intervention.batch", 0);
            if (c.kind == ExperimentKind::edge_removal) {
                c.random_baseline = kv.flag("intervention.random_baseline", false);
                c.random_step = kv.real("intervention.random_step", c.random_step);
                require(c.random_step > 0.0 && c.random_step <= 1.0, "'intervention.random_step' must lie in (0, 1]");
            }
        } else {
            c.centrality = convert("intervention.centrality", [&] {
                return parse_centrality_kind(kv.str("intervention.centrality", "degree"));
            });
            require(c.centrality != CentralityKind::investment, "'intervention.centrality' must be degree or betweenness");
            c.rule = convert("intervention.rule", [&] { return parse_split_rule(kv.str("intervention.rule", "alternating")); });
            c.max_splits = kv.count("intervention.max_splits", c.max_splits);
        }
    }
    if (c.kind == ExperimentKind::premiums) {
        c.risk.measure = convert("premiums.measure", [&] { return parse_risk_measure(kv.str("premiums.measure", "ES")); });
        c.risk.alpha = kv.real("premiums.alpha", c.risk.alpha);
        require(c.risk.alpha > 0.0 && c.risk.alpha < 1.0, "'premiums.alpha' must lie in (0, 1)");
        c.pool = kv.real("premiums.pool", -1.0);
        c.base_premium = kv.real("premiums.base", 0.0);
        require(c.base_premium >= 0.0, "'premiums.base' must be >= 0");
    }
    if (c.kind == ExperimentKind::oracle_suite) {
        c.runs = kv.count("runs", 100'000);
        c.instances = kv.count("oracle.instances", c.instances);
        c.max_nodes = kv.count("oracle.max_nodes", c.max_nodes);
        require(c.max_nodes >= 2 && c.max_nodes <= 8, "'oracle.max_nodes' must lie in [2, 8]");
    }
    require(c.runs >= 1, "'runs' must be >= 1");

    if (const auto extra = kv.unread(); !extra.empty()) {
        std::string msg = "unknown or inapplicable keys for experiment '" + std::string(to_string(c.kind)) + "':";
        for (const auto& k : extra) msg += " " + k;
        throw ConfigError(msg);
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) { return make_config(KeyValues::load(path)); }

}  // namespace cyberlab::lab
