#include "cyberlab/lab/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cyberlab/allocate.hpp"
#include "cyberlab/centrality.hpp"
#include "cyberlab/epidemic.hpp"
#include "cyberlab/exact.hpp"
#include "cyberlab/generators.hpp"
#include "cyberlab/graph_io.hpp"
#include "cyberlab/paths.hpp"
#include "cyberlab/risk_allocation.hpp"
#include "cyberlab/secgame.hpp"
#include "cyberlab/stats.hpp"
#include "cyberlab/topoctl.hpp"

namespace cyberlab::lab {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class Session {
  public:
    Session(const ExperimentConfig& cfg, std::ostream& log) : cfg_(cfg), log_(log) {
        fs::create_directories(cfg.output);
    }

    template <class Fn>
    auto stage(const std::string& name, Fn&& fn) {
        log_ << "[" << to_string(cfg_.kind) << "] " << name << " ..." << std::endl;
        const auto t0 = Clock::now();
        auto finish = [&] {
            out.stages.push_back({name, std::chrono::duration<double>(Clock::now() - t0).count()});
        };
        try {
            if constexpr (std::is_void_v<decltype(fn())>) {
                fn();
                finish();
            } else {
                auto r = fn();
                finish();
                return r;
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error("stage '" + name + "': " + e.what());
        }
    }

    /// Writes a CSV produced by `fill`, appending runs and seed columns to every row.
    template <class Fill>
    void csv(const std::string& name, std::uint64_t runs, Fill&& fill) {
        std::ostringstream body;
        fill(body);
        std::istringstream in(body.str());
        std::ofstream f(cfg_.output / name);
        if (!f) throw std::runtime_error("cannot write " + (cfg_.output / name).string());
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            f << line << (header ? ",runs,seed" : "," + std::to_string(runs) + "," + std::to_string(cfg_.seed.value))
              << '\n';
            header = false;
        }
        out.outputs.push_back(name);
    }

    template <class Fill>
    void file(const std::string& name, Fill&& fill) {
        std::ofstream f(cfg_.output / name);
        if (!f) throw std::runtime_error("cannot write " + (cfg_.output / name).string());
        fill(f);
        out.outputs.push_back(name);
    }

    void metric(std::string name, double value, std::optional<double> reference = std::nullopt) {
        log_ << "  " << name << " = " << value;
        if (reference) log_ << "  (reference " << *reference << ")";
        log_ << '\n';
        out.metrics.push_back({std::move(name), value, reference});
    }

    RunOutcome out;

  private:
    const ExperimentConfig& cfg_;
    std::ostream& log_;
};

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

void write_sizes_histogram(std::ostream& out, const std::vector<std::uint32_t>& sizes, std::size_t n) {
    std::vector<std::uint64_t> hist(n + 1, 0);
    for (auto s : sizes) ++hist[s];
    out << "size,count,frequency\n";
    for (std::size_t s = 0; s <= n; ++s) {
        if (hist[s] == 0) continue;
        out << s << ',' << hist[s] << ',' << static_cast<double>(hist[s]) / static_cast<double>(sizes.size()) << '\n';
    }
}

double pandemic_frequency(const std::vector<std::uint32_t>& sizes, std::size_t n, double q) {
    const auto limit = pandemic_size_threshold(q, n);
    const auto hits = std::count_if(sizes.begin(), sizes.end(), [&](std::uint32_t s) { return s >= limit; });
    return static_cast<double>(hits) / static_cast<double>(sizes.size());
}

GameConfig game_config(const ExperimentConfig& cfg) {
    GameConfig g;
    g.k = cfg.k;
    g.tau = cfg.tau;
    g.rounds = cfg.rounds;
    g.estimator = cfg.exact ? ProbabilityEstimator::exact() : ProbabilityEstimator::sampled(cfg.runs, cfg.seed, cfg.threads);
    g.tolerance = cfg.tolerance > 0.0 ? cfg.tolerance : GameConfig::default_tolerance(g.estimator);
    g.sequential = cfg.sequential;
    return g;
}

ControlCheck control_check(const ExperimentConfig& cfg) {
    ControlCheck c;
    c.criterion = cfg.criterion;
    c.check_runs = cfg.check_runs;
    c.confirm_runs = cfg.confirm_runs;
    c.seed = cfg.seed;
    c.threads = cfg.threads;
    return c;
}

void run_game_experiment(const ExperimentConfig& cfg, Session& s) {
    const Graph g = s.stage("graph", [&] { return cfg.graph.build(cfg.seed); });
    s.file("graph.edges", [&](std::ostream& o) { write_edge_list(o, g); });
    const auto gc = game_config(cfg);
    const auto result = s.stage("game", [&] {
        return run_game(g, SecurityProfile::uniform(g.node_count(), cfg.gamma0), gc);
    });
    const std::uint64_t runs = cfg.exact ? 0 : cfg.runs;
    s.csv("game_history.csv", runs, [&](std::ostream& o) { write_game_history_csv(o, result); });
    s.file("game_summary.json", [&](std::ostream& o) { write_game_summary_json(o, result, cfg.seed, runs); });
    const auto inv = investment_centrality(result.final_profile);
    s.csv("centrality.csv", runs, [&](std::ostream& o) { write_centrality_csv(o, g, &inv, cfg.threads); });
    s.metric("rounds_played", static_cast<double>(result.rounds_played));
    s.metric("converged", result.converged ? 1.0 : 0.0);
    s.metric("accumulated_expenses", result.final_report.total);
    const auto& gamma = result.final_profile.gamma;
    s.metric("mean_steady_gamma", mean(gamma));
    if (g.node_count() >= 2) {
        const auto deg = degree_centrality(g);
        s.metric("spearman_gamma_degree", spearman(gamma, deg.values));
    }
}

void run_allocation_experiment(const ExperimentConfig& cfg, Session& s) {
    const Graph g = s.stage("graph", [&] { return cfg.graph.build(cfg.seed); });
    s.file("graph.edges", [&](std::ostream& o) { write_edge_list(o, g); });
    const auto gc = game_config(cfg);
    const auto steady = s.stage("game", [&] {
        return run_game(g, SecurityProfile::uniform(g.node_count(), cfg.gamma0), gc);
    });
    const std::uint64_t runs = cfg.exact ? 0 : cfg.runs;
    s.csv("game_history.csv", runs, [&](std::ostream& o) { write_game_history_csv(o, steady); });
    const auto inv = investment_centrality(steady.final_profile);
    s.csv("centrality.csv", runs, [&](std::ostream& o) { write_centrality_csv(o, g, &inv, cfg.threads); });

    std::vector<AllocationRow> rows;
    s.stage("allocation", [&] {
        for (auto strategy : cfg.strategies) {
            if (strategy == AllocationStrategy::untargeted) {
                const auto plan = make_plan(strategy, cfg.budget, g.node_count());
                rows.push_back({plan, evaluate_allocation(g, steady.final_profile, plan, gc)});
                continue;
            }
            for (auto kind : cfg.centralities) {
                const auto c = kind == CentralityKind::investment ? inv : compute_centrality(g, kind, cfg.threads);
                const auto plan = make_plan(strategy, cfg.budget, g.node_count(), &c, cfg.fraction);
                rows.push_back({plan, evaluate_allocation(g, steady.final_profile, plan, gc)});
            }
        }
    });
    s.file("allocation.csv", [&](std::ostream& o) { write_allocation_csv(o, rows, runs, cfg.seed); });
    s.metric("steady_expenses", steady.final_report.total);
    for (const auto& r : rows) {
        std::string name = "reduction_pct." + std::string(to_string(r.plan.strategy));
        if (r.plan.centrality) name += "." + std::string(to_string(*r.plan.centrality));
        s.metric(name, 100.0 * r.outcome.reduction);
    }
    s.metric("spearman_gamma_degree", spearman(steady.final_profile.gamma, degree_centrality(g).values));
}

void run_phase_transition(const ExperimentConfig& cfg, Session& s) {
    const std::size_t n = cfg.graph.n;
    const auto params = SirParams::homogeneous(n, cfg.tau, cfg.gamma);
    for (std::size_t idx = 0; idx < cfg.p_values.size(); ++idx) {
        const double p = cfg.p_values[idx];
        const Seed stream = derive_seed(cfg.seed, idx);
        const auto label = fixed(p, 4);
        const auto sizes = s.stage("p=" + label, [&] {
            if (cfg.resample) {
                auto factory = [&](Rng& rng) { return erdos_renyi(n, p, Seed{rng()}); };
                return outbreak_sizes_resampled(factory, params, cfg.runs, stream, cfg.threads);
            }
            const Graph g = erdos_renyi(n, p, stream);
            return outbreak_sizes(g, params, InitialCondition::uniform(), cfg.runs, stream, cfg.threads);
        });
        s.csv("histogram_p" + label + ".csv", cfg.runs, [&](std::ostream& o) { write_sizes_histogram(o, sizes, n); });
        const double lambda = p * static_cast<double>(n - 1);
        s.metric("pandemic_frequency.p" + label, pandemic_frequency(sizes, n, cfg.criterion.size_fraction));
        s.metric("threshold_index.p" + label, poisson_threshold(lambda, cfg.tau, cfg.gamma).index);
    }
}

void run_heterogeneity(const ExperimentConfig& cfg, Session& s) {
    const std::size_t n = cfg.graph.n;
    const auto params = SirParams::homogeneous(n, cfg.tau, cfg.gamma);
    struct Case {
        std::string name;
        Graph graph;
    };
    std::vector<Case> cases;
    cases.push_back({"ba", barabasi_albert(n, cfg.graph.m, derive_seed(cfg.seed, 1))});
    cases.push_back({"er", erdos_renyi(n, cfg.compare_p, derive_seed(cfg.seed, 2))});
    for (const auto& c : cases) {
        const auto stats = s.stage(c.name, [&] {
            return monte_carlo(c.graph, params, InitialCondition::uniform(), cfg.runs, derive_seed(cfg.seed, 3),
                               cfg.threads);
        });
        s.csv("histogram_" + c.name + ".csv", cfg.runs, [&](std::ostream& o) { write_histogram_csv(o, stats); });
        s.file(c.name + ".edges", [&](std::ostream& o) { write_edge_list(o, c.graph); });
        const auto cls = classify_pandemic(stats, cfg.criterion);
        const auto [k1, k2] = degree_moments(c.graph);
        s.metric("edges." + c.name, static_cast<double>(c.graph.edge_count()));
        s.metric("pandemic_frequency." + c.name, cls.frequency);
        s.metric("pandemic_prone." + c.name, cls.pandemic_prone ? 1.0 : 0.0);
        s.metric("threshold_index." + c.name, epidemic_threshold(k1, k2, cfg.tau, cfg.gamma).index);
    }
}

void write_removed_csv(std::ostream& o, const InterventionResult& r) {
    o << "order,u,v\n";
    for (std::size_t i = 0; i < r.removed.size(); ++i) o << i + 1 << ',' << r.removed[i].u << ',' << r.removed[i].v << '\n';
}

void write_splits_csv(std::ostream& o, const InterventionResult& r) {
    o << "order,node,created,original,moved,degenerate\n";
    for (std::size_t i = 0; i < r.splits.size(); ++i) {
        const auto& sp = r.splits[i];
        o << i + 1 << ',' << sp.node << ',' << sp.created << ',' << sp.original << ',' << sp.moved.size() << ','
          << (sp.degenerate ? 1 : 0) << '\n';
    }
}

InterventionResult run_intervention(const ExperimentConfig& cfg, Session& s, const Graph& g, const SirParams& params) {
    const auto check = control_check(cfg);
    return s.stage("intervention", [&] {
        if (cfg.intervention == ExperimentKind::edge_removal) return edge_removal_intervention(g, params, check, cfg.batch);
        return splitting_intervention(g, params, check, cfg.centrality, cfg.rule, cfg.max_splits);
    });
}

void report_intervention(const ExperimentConfig& cfg, Session& s, const InterventionResult& r) {
    s.csv("intervention_log.csv", cfg.check_runs, [&](std::ostream& o) { write_intervention_log_csv(o, r.log); });
    s.file("graph_after.edges", [&](std::ostream& o) { write_edge_list(o, r.graph); });
    s.metric("frequency_before", r.frequency_before);
    s.metric("frequency_after", r.frequency_after);
    s.metric("avg_path_before", r.path_before, 2.96);
    if (cfg.intervention == ExperimentKind::edge_removal) {
        s.csv("removed_edges.csv", cfg.check_runs, [&](std::ostream& o) { write_removed_csv(o, r); });
        s.metric("removed_edges", static_cast<double>(r.removed.size()));
        s.metric("removed_fraction", r.removed_fraction(), 0.14);
        s.metric("avg_path_after", r.path_after, 3.30);
    } else {
        const bool standard = cfg.rule == SplitRule::alternating;
        s.csv("splits.csv", cfg.check_runs, [&](std::ostream& o) { write_splits_csv(o, r); });
        s.metric("splits", static_cast<double>(r.splits.size()));
        s.metric("split_fraction", r.split_fraction(), standard ? 0.06 : 0.08);
        s.metric("avg_path_after", r.path_after, standard ? 3.24 : 3.36);
    }
}

ContactCoefficients coefficients_for(const ExperimentConfig& cfg, const Graph& g, const InterventionResult& r) {
    if (cfg.intervention == ExperimentKind::edge_removal) return contact_coefficients_edges(g.node_count(), r.removed);
    const auto origins = r.split_origins();
    return contact_coefficients_splits(origins, compute_centrality(g, cfg.centrality, cfg.threads).values);
}

void run_intervention_experiment(const ExperimentConfig& cfg, Session& s) {
    const Graph g = s.stage("graph", [&] { return cfg.graph.build(cfg.seed); });
    s.file("graph.edges", [&](std::ostream& o) { write_edge_list(o, g); });
    const auto params = SirParams::homogeneous(g.node_count(), cfg.tau, cfg.gamma);
    InterventionResult r;
    try {
        r = run_intervention(cfg, s, g, params);
    } catch (const ControlNotAchieved& e) {
        report_intervention(cfg, s, e.partial());
        throw;
    }
    report_intervention(cfg, s, r);
    if (r.actions() > 0) {
        const auto cc = coefficients_for(cfg, g, r);
        s.csv("coefficients.csv", cfg.check_runs, [&](std::ostream& o) { write_coefficients_csv(o, cc, {}, {}); });
    }
    if (cfg.kind == ExperimentKind::edge_removal && cfg.random_baseline) {
        const auto rr = s.stage("random_baseline", [&] {
            return random_removal_threshold(g, params, control_check(cfg), cfg.random_step);
        });
        s.csv("random_log.csv", cfg.check_runs, [&](std::ostream& o) { write_intervention_log_csv(o, rr.log); });
        s.metric("random_controlled", rr.controlled ? 1.0 : 0.0);
        s.metric("random_fraction", rr.fraction, 0.325);
        s.metric("random_avg_path", rr.avg_path_length);
    }
}

void run_premiums(const ExperimentConfig& cfg, Session& s) {
    const Graph g = s.stage("graph", [&] { return cfg.graph.build(cfg.seed); });
    const auto params = SirParams::homogeneous(g.node_count(), cfg.tau, cfg.gamma);
    const auto r = run_intervention(cfg, s, g, params);
    report_intervention(cfg, s, r);
    if (r.actions() == 0) throw std::runtime_error("premiums: the input graph is not pandemic-prone, nothing to allocate");
    const auto cc = coefficients_for(cfg, g, r);
    const auto params_c = extend_params(params, r.graph.node_count());
    const auto losses = s.stage("paired_losses", [&] {
        return paired_outbreak_losses(g, params, r.graph, params_c, cfg.runs, derive_seed(cfg.seed, 7), cfg.threads);
    });
    const auto prem = pandemic_loss_premiums(losses.before, losses.after, cfg.risk, cc.c);
    const double pool = cfg.pool >= 0.0 ? cfg.pool : prem.capital;
    const std::vector<double> base(g.node_count(), cfg.base_premium);
    const auto adjusted = surcharge(base, cc.c, pool);
    s.csv("coefficients.csv", cfg.runs, [&](std::ostream& o) { write_coefficients_csv(o, cc, adjusted, prem.premiums); });
    s.csv("losses.csv", cfg.runs, [&](std::ostream& o) {
        o << "run,L,L_c,L_e\n";
        for (std::size_t i = 0; i < prem.excess.size(); ++i) {
            o << i << ',' << losses.before[i] << ',' << losses.after[i] << ',' << prem.excess[i] << '\n';
        }
    });
    std::vector<NodeId> order = rank_descending(cc.c);
    const std::size_t decile = std::max<std::size_t>(1, g.node_count() / 10);
    double top = 0.0;
    for (std::size_t i = 0; i < decile; ++i) top += prem.premiums[order[i]];
    s.metric("risk_capital", prem.capital);
    s.metric("pool", pool);
    s.metric("top_decile_premium_share", prem.capital > 0.0 ? top / prem.capital : 0.0);
    s.metric("mean_L", mean(losses.before));
    s.metric("mean_L_c", mean(losses.after));
}

void run_oracle(const ExperimentConfig& cfg, Session& s) {
    const auto rows = s.stage("oracle", [&] {
        return oracle_suite(cfg.instances, cfg.max_nodes, cfg.runs, cfg.seed, cfg.threads);
    });
    s.csv("oracle.csv", cfg.runs, [&](std::ostream& o) {
        o << "instance,nodes,tau,node,gamma,exact,estimate,bound,pass\n";
        o.precision(10);
        for (const auto& r : rows) {
            o << r.instance << ',' << r.nodes << ',' << r.tau << ',' << r.node << ',' << r.gamma << ',' << r.exact << ','
              << r.estimate << ',' << r.bound << ',' << (r.pass ? "pass" : "fail") << '\n';
        }
    });
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const OracleRow& r) { return !r.pass; });
    s.metric("checks", static_cast<double>(rows.size()));
    s.metric("failures", static_cast<double>(failed));
    if (failed > 0) s.out.exit_code = kExitCheckFailed;
}

}  // namespace

std::vector<OracleRow> oracle_suite(std::size_t instances, std::size_t max_nodes, std::uint64_t runs, Seed seed,
                                    unsigned threads) {
    if (max_nodes < 2 || max_nodes > kExactMaxNodes) throw std::invalid_argument("oracle suite: max_nodes out of range");
    std::vector<OracleRow> rows;
    for (std::size_t inst = 0; inst < instances; ++inst) {
        Rng rng = make_rng(seed, 0x0AC1E000ULL + inst);
        std::uniform_int_distribution<std::size_t> size(2, max_nodes);
        const std::size_t n = size(rng);
        const Graph g = erdos_renyi(n, 0.6, Seed{rng()});
        SirParams params;
        params.tau = 0.05 + 0.95 * uniform01(rng);
        for (std::size_t i = 0; i < n; ++i) params.gamma.push_back(0.1 + 0.9 * uniform01(rng));
        const auto exact = exact_infection_probabilities(g, params, InitialCondition::uniform());
        const auto stats = monte_carlo(g, params, InitialCondition::uniform(), runs, derive_seed(seed, inst), threads);
        const auto est = stats.infection_probabilities();
        for (NodeId i = 0; i < n; ++i) {
            OracleRow r;
            r.instance = inst;
            r.nodes = n;
            r.tau = params.tau;
            r.node = i;
            r.gamma = params.gamma[i];
            r.exact = exact[i];
            r.estimate = est[i];
            r.bound = 4.0 * std::sqrt(std::max(0.0, exact[i] * (1.0 - exact[i])) / static_cast<double>(runs));
            r.pass = std::abs(r.estimate - r.exact) <= r.bound + 1e-12;
            rows.push_back(r);
        }
    }
    return rows;
}

RunOutcome run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    const auto t0 = Clock::now();
    Session s(cfg, log);
    log << "experiment " << to_string(cfg.kind) << ", seed " << cfg.seed.value << ", output " << cfg.output.string()
        << '\n';
    switch (cfg.kind) {
        case ExperimentKind::game: run_game_experiment(cfg, s); break;
        case ExperimentKind::allocation: run_allocation_experiment(cfg, s); break;
        case ExperimentKind::phase_transition: run_phase_transition(cfg, s); break;
        case ExperimentKind::heterogeneity: run_heterogeneity(cfg, s); break;
        case ExperimentKind::edge_removal:
        case ExperimentKind::node_splitting: run_intervention_experiment(cfg, s); break;
        case ExperimentKind::premiums: run_premiums(cfg, s); break;
        case ExperimentKind::oracle_suite: run_oracle(cfg, s); break;
    }
    s.out.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return s.out;
}

void write_manifest(const ExperimentConfig& cfg, const RunOutcome& outcome) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["experiment"] = std::string(to_string(cfg.kind));
    j["seed"] = cfg.seed.value;
    j["config"] = cfg.echo;
    j["wall_clock_seconds"] = outcome.wall_seconds;
    j["exit_code"] = outcome.exit_code;
    j["stages"] = nlohmann::json::array();
    for (const auto& st : outcome.stages) j["stages"].push_back({{"name", st.name}, {"seconds", st.seconds}});
    j["outputs"] = outcome.outputs;
    j["metrics"] = nlohmann::json::array();
    for (const auto& m : outcome.metrics) {
        nlohmann::json e{{"name", m.name}, {"value", m.value}};
        if (m.reference) e["reference"] = *m.reference;
        j["metrics"].push_back(e);
    }
    const auto final_path = cfg.output / "manifest.json";
    const auto tmp = cfg.output / "manifest.json.tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f << j.dump(2) << '\n';
        if (!f) throw std::runtime_error("failed writing " + tmp.string());
    }
    fs::rename(tmp, final_path);
}

int run_values(const KeyValues& kv, std::ostream& log, std::ostream& err) {
    ExperimentConfig cfg;
    try {
        cfg = make_config(kv);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    try {
        const auto outcome = run_experiment(cfg, log);
        write_manifest(cfg, outcome);
        return outcome.exit_code;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntimeError;
    }
}

int run_file(const fs::path& path, const KeyValues& overrides, std::ostream& log, std::ostream& err) {
    KeyValues kv;
    try {
        if (path.extension() == ".json") {
            std::ifstream in(path);
            if (!in) throw ConfigError("cannot read manifest '" + path.string() + "'");
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError("manifest '" + path.string() + "' is not valid JSON: " + e.what());
            }
            if (!j.contains("config") || !j["config"].is_object()) {
                throw ConfigError("manifest '" + path.string() + "' has no config object");
            }
            for (const auto& [k, v] : j["config"].items()) kv.set(k, v.get<std::string>());
        } else {
            kv = KeyValues::load(path);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    for (const auto& [k, v] : overrides.entries()) kv.set(k, v);
    return run_values(kv, log, err);
}

}  // namespace cyberlab::lab
