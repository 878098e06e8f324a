#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyberlab/centrality.hpp"
#include "cyberlab/epidemic.hpp"
#include "cyberlab/exact.hpp"
#include "cyberlab/graph_io.hpp"
#include "cyberlab/lab/config.hpp"
#include "cyberlab/lab/report.hpp"
#include "cyberlab/lab/runner.hpp"

namespace fs = std::filesystem;
using namespace cyberlab;

namespace {

struct Globals {
    std::uint64_t seed = 1;
    std::uint64_t runs = 0;
    unsigned threads = 1;
    std::string out = "out";
};

struct GraphFlags {
    std::string generator;
    std::size_t n = 0;
    double p = -1.0;
    std::size_t m = 0;
    std::string fixture;
    std::string file;

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", generator, "er, ba, fixture, path, complete or edge_list");
        cmd->add_option("--n", n, "node count");
        cmd->add_option("--p", p, "ER edge probability");
        cmd->add_option("--m", m, "BA edges per new node");
        cmd->add_option("--fixture", fixture, "complete8, star8 or tree8");
        cmd->add_option("--file", file, "edge-list file (n=<N> header, one 'i j' per line)");
    }

    void store(lab::KeyValues& kv) const {
        if (!generator.empty()) kv.set("graph.generator", generator);
        if (n > 0) kv.set("graph.n", std::to_string(n));
        if (p >= 0.0) kv.set("graph.p", std::to_string(p));
        if (m > 0) kv.set("graph.m", std::to_string(m));
        if (!fixture.empty()) kv.set("graph.fixture", fixture);
        if (!file.empty()) kv.set("graph.file", file);
    }
};

void store_globals(const Globals& g, lab::KeyValues& kv, bool with_runs = true) {
    kv.set("seed", std::to_string(g.seed));
    kv.set("threads", std::to_string(g.threads));
    kv.set("output", g.out);
    if (with_runs && g.runs > 0) kv.set("runs", std::to_string(g.runs));
}

void store_sets(const std::vector<std::string>& sets, lab::KeyValues& kv) {
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw lab::ConfigError("--set expects key=value, got '" + s + "'");
        kv.set(s.substr(0, eq), s.substr(eq + 1));
    }
}

Graph build_graph(const GraphFlags& flags, const Globals& g) {
    lab::KeyValues kv;
    kv.set("experiment", "game");
    kv.set("seed", std::to_string(g.seed));
    flags.store(kv);
    return lab::make_config(kv).graph.build(Seed{g.seed});
}

int cmd_generate(const GraphFlags& flags, const Globals& g) {
    const Graph graph = build_graph(flags, g);
    fs::create_directories(g.out);
    save_edge_list(fs::path(g.out) / "graph.edges", graph);
    std::ofstream deg(fs::path(g.out) / "degree.csv");
    write_degree_csv(deg, graph);
    std::ofstream cen(fs::path(g.out) / "centrality.csv");
    write_centrality_csv(cen, graph, nullptr, g.threads);
    std::cout << "wrote " << graph.node_count() << " nodes, " << graph.edge_count() << " edges to " << g.out << '\n';
    return lab::kExitOk;
}

int cmd_simulate(const GraphFlags& flags, const Globals& g, double tau, double gamma, bool exact, long init_node) {
    const Graph graph = build_graph(flags, g);
    const auto params = SirParams::homogeneous(graph.node_count(), tau, gamma);
    const auto init = init_node < 0 ? InitialCondition::uniform() : InitialCondition::node(static_cast<NodeId>(init_node));
    fs::create_directories(g.out);
    if (exact) {
        const auto p = exact_infection_probabilities(graph, params, init);
        std::ofstream f(fs::path(g.out) / "exact.csv");
        f << "node,P_exact\n";
        f.precision(12);
        for (std::size_t i = 0; i < p.size(); ++i) f << i << ',' << p[i] << '\n';
        std::cout << "wrote exact infection probabilities for " << p.size() << " nodes\n";
        return lab::kExitOk;
    }
    const std::uint64_t runs = g.runs > 0 ? g.runs : 10'000;
    const auto stats = monte_carlo(graph, params, init, runs, Seed{g.seed}, g.threads);
    std::ofstream ens(fs::path(g.out) / "ensemble.json");
    write_ensemble_json(ens, stats);
    std::ofstream hist(fs::path(g.out) / "histogram.csv");
    write_histogram_csv(hist, stats);
    const auto cls = classify_pandemic(stats, PandemicCriterion{});
    std::cout << runs << " runs, pandemic frequency " << cls.frequency << (cls.pandemic_prone ? " (pandemic-prone)" : "")
              << '\n';
    return lab::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation lab for systemic cyber risk on networks"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "master seed")->capture_default_str();
    app.add_option("--runs", g.runs, "Monte-Carlo runs (experiment default when omitted)");
    app.add_option("--threads", g.threads, "worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--out", g.out, "output directory")->capture_default_str();

    GraphFlags gen_flags;
    auto* generate = app.add_subcommand("generate", "draw a graph and write its edge list, degrees and centralities");
    gen_flags.attach(generate);

    GraphFlags sim_flags;
    double tau = 0.1;
    double gamma = 1.0;
    bool exact = false;
    long init_node = -1;
    auto* simulate = app.add_subcommand("simulate", "SIR ensemble on one graph");
    sim_flags.attach(simulate);
    simulate->add_option("--tau", tau, "infection rate")->capture_default_str();
    simulate->add_option("--gamma", gamma, "recovery rate")->capture_default_str();
    simulate->add_flag("--exact", exact, "exact infection probabilities (at most 10 nodes)");
    simulate->add_option("--init", init_node, "fixed initially infected node (default: uniform)");

    std::vector<std::string> sets;
    auto experiment_verb = [&](const std::string& name, const std::string& help) {
        auto* cmd = app.add_subcommand(name, help);
        cmd->add_option("--set", sets, "extra config entries key=value");
        return cmd;
    };

    GraphFlags game_flags;
    std::string mode = "monte_carlo";
    auto* game = experiment_verb("game", "security investment game to a steady state");
    game_flags.attach(game);
    game->add_option("--mode", mode, "exact or monte_carlo")->capture_default_str();

    GraphFlags alloc_flags;
    std::string alloc_mode = "monte_carlo";
    double budget = 5.0;
    auto* allocate = experiment_verb("allocate", "steady state plus budget allocation strategies");
    alloc_flags.attach(allocate);
    allocate->add_option("--mode", alloc_mode, "exact or monte_carlo")->capture_default_str();
    allocate->add_option("--budget", budget, "extra security budget")->capture_default_str();

    GraphFlags int_flags;
    std::string method = "edge_removal";
    auto* intervene = experiment_verb("intervene", "edge removal or node splitting until pandemic control");
    int_flags.attach(intervene);
    intervene->add_option("--method", method, "edge_removal or node_splitting")->capture_default_str();

    GraphFlags prem_flags;
    auto* premiums = experiment_verb("premiums", "contact coefficients, risk capital and premiums");
    prem_flags.attach(premiums);

    std::string manifest;
    auto* report = app.add_subcommand("report", "summarize a finished run from its manifest");
    report->add_option("manifest", manifest, "manifest.json")->required();

    std::string config_path;
    auto* run = experiment_verb("run", "run an experiment config (or replay a manifest.json)");
    run->add_option("config", config_path, "config file or manifest.json")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) return cmd_generate(gen_flags, g);
        if (*simulate) return cmd_simulate(sim_flags, g, tau, gamma, exact, init_node);
        if (*report) return lab::report(manifest, std::cout, std::cerr);

        lab::KeyValues kv;
        if (*run) {
            lab::KeyValues overrides;
            if (app.count("--seed")) overrides.set("seed", std::to_string(g.seed));
            if (app.count("--threads")) overrides.set("threads", std::to_string(g.threads));
            if (app.count("--out")) overrides.set("output", g.out);
            if (g.runs > 0) overrides.set("runs", std::to_string(g.runs));
            store_sets(sets, overrides);
            return lab::run_file(config_path, overrides, std::cout, std::cerr);
        }
        if (*game) {
            kv.set("experiment", "game");
            kv.set("game.mode", mode);
            game_flags.store(kv);
        } else if (*allocate) {
            kv.set("experiment", "allocation");
            kv.set("game.mode", alloc_mode);
            kv.set("allocation.budget", std::to_string(budget));
            alloc_flags.store(kv);
        } else if (*intervene) {
            kv.set("experiment", method);
            int_flags.store(kv);
        } else if (*premiums) {
            kv.set("experiment", "premiums");
            prem_flags.store(kv);
        }
        store_globals(g, kv);
        store_sets(sets, kv);
        return lab::run_values(kv, std::cout, std::cerr);
    } catch (const lab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return lab::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return lab::kExitRuntimeError;
    }
}
