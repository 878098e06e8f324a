// One PASS/FAIL line per acceptance criterion, followed by the measured values.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cyberlab/allocate.hpp"
#include "cyberlab/centrality.hpp"
#include "cyberlab/epidemic.hpp"
#include "cyberlab/exact.hpp"
#include "cyberlab/generators.hpp"
#include "cyberlab/lab/runner.hpp"
#include "cyberlab/secgame.hpp"
#include "cyberlab/stats.hpp"
#include "cyberlab/topoctl.hpp"

using namespace cyberlab;

namespace {

constexpr double kK = 1.0 / 3.0;

struct Options {
    bool quick = false;
    unsigned threads = 0;
    std::string properties_binary;
};

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "  failed: " << what << '\n';
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_runtime(Verdict& v, Clock::time_point t0, double limit) {
    const double s = seconds_since(t0);
    v.detail << "  runtime " << std::fixed << std::setprecision(1) << s << " s (limit " << limit << " s)\n";
    v.require(s < limit, "runtime limit");
}

// ---------------------------------------------------------------------------

Verdict two_node_game(const Options&) {
    Verdict v;
    const auto t0 = Clock::now();
    GameConfig cfg;
    cfg.tau = 0.1;
    cfg.k = kK;
    cfg.estimator = ProbabilityEstimator::exact();
    cfg.tolerance = GameConfig::default_tolerance(cfg.estimator);
    const auto result = run_game(path_graph(2), SecurityProfile::uniform(2, 0.1), cfg);

    std::vector<double> rounds;
    for (std::size_t r = 1; r < result.history.size(); ++r) rounds.push_back(result.history[r].profile[0]);
    rounds.push_back(result.final_profile[0]);
    const std::array<double, 5> published{1.2234, 1.0638, 1.0681, 1.0680, 1.0680};
    constexpr double kTol = 1e-4;
    v.detail << std::setprecision(7);
    for (std::size_t r = 0; r < published.size(); ++r) {
        if (r >= rounds.size()) {
            v.require(false, "round " + std::to_string(r + 1) + " missing");
            continue;
        }
        v.detail << "  round " << r + 1 << ": " << rounds[r] << " (published " << published[r] << ")\n";
        v.require(std::abs(rounds[r] - published[r]) <= kTol, "round " + std::to_string(r + 1));
    }
    for (std::size_t i = 0; i < 2; ++i) v.require(std::abs(result.final_profile[i] - 1.068) <= 5e-4, "steady state");
    v.require(result.converged, "convergence");
    require_runtime(v, t0, 1.0);
    return v;
}

Verdict two_node_loss(const Options& opt) {
    Verdict v;
    const auto t0 = Clock::now();
    const Graph g = path_graph(2);
    const auto params = SirParams::homogeneous(2, 0.1, 0.1);
    const auto exact = exact_infection_probabilities(g, params, InitialCondition::uniform());
    const auto oracle = two_node_oracle(0.1, 0.1, 0.1);
    v.detail << std::setprecision(10) << "  exact P = " << exact[0] << ", closed-form L = " << oracle.loss1 << '\n';
    for (std::size_t i = 0; i < 2; ++i) {
        v.require(std::abs(exact[i] - 0.75) <= 1e-12, "exact P");
        v.require(std::abs(loss(exact[i], 0.1) - 7.5) <= 1e-12, "exact L");
    }
    v.require(oracle.loss1 == 7.5 && oracle.loss2 == 7.5 && oracle.p1 == 0.75 && oracle.p2 == 0.75, "closed form");
    const auto stats = monte_carlo(g, params, InitialCondition::uniform(), 1'000'000, Seed{1}, opt.threads);
    for (NodeId i = 0; i < 2; ++i) {
        const double l = loss(stats.infection_probability(i), 0.1);
        v.detail << "  sampled L_" << i << " = " << l << '\n';
        v.require(std::abs(l - 7.5) <= 0.01, "sampled L");
    }
    require_runtime(v, t0, 60.0);
    return v;
}

Verdict tree_best_response(const Options& opt) {
    Verdict v;
    const auto t0 = Clock::now();
    const Graph g = fixture(Fixture::tree8);
    const auto params = SirParams::homogeneous(8, 0.1, 0.1);
    constexpr NodeId kNode = 2;
    const double p = exact_infection_probability(g, params, InitialCondition::uniform(), kNode);
    const double exact_br = best_response(p, kK, 8);
    const double p_mc = monte_carlo(g, params, InitialCondition::uniform(), 1'000'000, Seed{1}, opt.threads)
                            .infection_probability(kNode);
    const double mc_br = best_response(p_mc, kK, 8);
    v.detail << std::setprecision(7) << "  exact P = " << p << ", best response " << exact_br << '\n'
             << "  sampled P = " << p_mc << ", best response " << mc_br << '\n';
    v.require(std::abs(exact_br - 0.943) <= 0.005, "exact best response");
    v.require(std::abs(mc_br - exact_br) <= 0.01, "sampled best response");
    require_runtime(v, t0, 300.0);
    return v;
}

Verdict oracle_agreement(const Options& opt) {
    Verdict v;
    const auto t0 = Clock::now();
    const auto rows = lab::oracle_suite(20, 4, 100'000, Seed{1}, opt.threads);
    std::size_t failed = 0;
    double worst = 0.0;
    for (const auto& r : rows) {
        failed += !r.pass;
        if (r.bound > 0.0) worst = std::max(worst, std::abs(r.estimate - r.exact) / r.bound);
    }
    v.detail << "  " << rows.size() << " node checks, " << failed << " outside the bound, worst |error|/bound "
             << std::setprecision(3) << worst << '\n';
    v.require(!rows.empty() && failed == 0, "all nodes within 4 standard errors");
    require_runtime(v, t0, 300.0);
    return v;
}

Verdict phase_transition(const Options& opt) {
    Verdict v;
    const auto t0 = Clock::now();
    constexpr std::size_t kN = 1000;
    constexpr std::uint64_t kRuns = 10'000;
    const auto params = SirParams::homogeneous(kN, 0.1, 1.0);
    const auto limit = pandemic_size_threshold(0.1, kN);
    std::map<double, double> freq;
    for (double p : {0.010, 0.011, 0.012, 0.013, 0.014}) {
        auto make = [p](Rng& rng) { return erdos_renyi(kN, p, Seed{rng()}); };
        const auto sizes = outbreak_sizes_resampled(make, params, kRuns, derive_seed(Seed{1}, std::llround(p * 1e4)),
                                                    opt.threads);
        std::uint64_t hits = 0;
        for (auto s : sizes) hits += s >= limit;
        freq[p] = static_cast<double>(hits) / kRuns;
        v.detail << "  p = " << std::fixed << std::setprecision(3) << p << ": pandemic frequency "
                 << std::setprecision(4) << freq[p] << '\n';
    }
    v.require(freq[0.010] < 0.001, "p = 0.010 below 0.001");
    v.require(freq[0.011] < 0.001, "p = 0.011 below 0.001");
    v.require(freq[0.013] >= 0.01, "p = 0.013 at least 0.01");
    v.require(freq[0.014] >= 0.01, "p = 0.014 at least 0.01");
    const auto idx = poisson_threshold(11.0, 0.1, 1.0);
    v.detail << "  threshold index at mean degree 11: " << std::setprecision(17) << idx.index << '\n';
    v.require(std::abs(idx.index - 1.0) <= 1e-12 && !idx.supercritical, "critical index at mean degree 11");
    v.require(poisson_threshold(11.0 + 1e-9, 0.1, 1.0).supercritical, "supercritical just above 11");
    require_runtime(v, t0, 900.0);
    return v;
}

Verdict heterogeneity(const Options& opt) {
    Verdict v;
    const auto t0 = Clock::now();
    const auto params = SirParams::homogeneous(1000, 0.1, 1.0);
    const Graph ba = barabasi_albert(1000, 5, Seed{1});
    const Graph er = erdos_renyi(1000, 0.01, Seed{1});
    const auto fb = check_pandemic(ba, params, {}, 10'000, Seed{2}, opt.threads, false).frequency();
    const auto fe = check_pandemic(er, params, {}, 10'000, Seed{2}, opt.threads, false).frequency();
    const auto [bk1, bk2] = degree_moments(ba);
    const auto [ek1, ek2] = degree_moments(er);
    v.detail << std::setprecision(4) << "  BA pandemic frequency " << fb << ", threshold index "
             << epidemic_threshold(bk1, bk2, 0.1, 1.0).index << '\n'
             << "  ER pandemic frequency " << fe << ", threshold index "
             << epidemic_threshold(ek1, ek2, 0.1, 1.0).index << '\n';
    v.require(fb >= 0.01, "BA at least 0.01");
    v.require(fe < 0.001, "ER below 0.001");
    require_runtime(v, t0, 900.0);
    return v;
}

ControlCheck default_check(const Options& opt, Seed seed) {
    ControlCheck c;
    c.seed = seed;
    c.threads = opt.threads;
    return c;
}

Verdict edge_removal(const Options& opt) {
    Verdict v;
    const auto t0 = Clock::now();
    const Graph g = barabasi_albert(1000, 5, Seed{7});
    const auto params = SirParams::homogeneous(1000, 0.1, 1.0);
    const auto check = default_check(opt, Seed{11});
    const auto guided = edge_removal_intervention(g, params, check);
    const auto random = random_removal_threshold(g, params, check);
    v.detail << std::setprecision(4) << "  guided: removed fraction " << guided.removed_fraction() << ", <l> "
             << guided.path_after << " (before " << guided.path_before << ")\n"
             << "  random: removed fraction " << random.fraction << ", <l> " << random.avg_path_length << '\n';
    v.require(guided.controlled, "guided removal reaches control");
    v.require(random.controlled, "random removal reaches control");
    v.require(guided.removed_fraction() >= 0.10 && guided.removed_fraction() <= 0.20, "guided fraction in [0.10, 0.20]");
    v.require(random.fraction >= 0.25 && random.fraction <= 0.45, "random fraction in [0.25, 0.45]");
    v.require(guided.path_after <= random.avg_path_length, "guided <l> not above random <l>");
    require_runtime(v, t0, 3600.0);
    return v;
}

Verdict node_splitting(const Options& opt) {
    Verdict v;
    const auto t0 = Clock::now();
    constexpr int kSeeds = 10;
    int ordered = 0;
    double split_share = 0.0;
    double path = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
        const Graph g = barabasi_albert(1000, 5, derive_seed(Seed{8}, s));
        const auto params = SirParams::homogeneous(1000, 0.1, 1.0);
        const auto check = default_check(opt, derive_seed(Seed{9}, s));
        const auto standard = splitting_intervention(g, params, check, CentralityKind::degree, SplitRule::alternating);
        const auto modified = splitting_intervention(g, params, check, CentralityKind::degree, SplitRule::keep_hubs);
        const bool worse = modified.splits.size() > standard.splits.size() && modified.path_after > standard.path_after;
        ordered += worse;
        split_share += standard.split_fraction() / kSeeds;
        path += standard.path_after / kSeeds;
        v.detail << "  seed " << s << ": standard " << standard.splits.size() << " splits, <l> " << std::setprecision(4)
                 << standard.path_after << "; modified " << modified.splits.size() << " splits, <l> "
                 << modified.path_after << (worse ? "" : "  (ordering violated)") << '\n';
    }
    v.detail << "  mean split share " << split_share << ", mean <l> " << path << ", ordered on " << ordered << "/"
             << kSeeds << '\n';
    v.require(split_share >= 0.04 && split_share <= 0.09, "split share in [0.04, 0.09]");
    v.require(path >= 3.0 && path <= 3.5, "<l> in [3.0, 3.5]");
    v.require(ordered >= 8, "modified variant worse on at least 8 of 10 seeds");
    return v;
}

// ---------------------------------------------------------------------------
// Allocation orderings and steady-state structure share one set of instances.

struct Profile {
    const char* label;
    std::size_t n;
    std::uint64_t runs;
    int per_family;
    bool check_range;
    double runtime_limit;
};

constexpr Profile kReduced{"reduced (N = 30, 1e4 runs, 3 ER + 3 BA)", 30, 10'000, 3, false, 1800.0};
constexpr Profile kFull{"full (N = 50, 1e5 runs, 10 ER + 10 BA)", 50, 100'000, 10, true, 0.0};

struct InstanceResult {
    std::string name;
    std::map<std::pair<AllocationStrategy, CentralityKind>, double> reduction;
    double untargeted = 0.0;
    double rank_correlation = 0.0;
};

struct ProfileResult {
    std::vector<InstanceResult> instances;
    double seconds = 0.0;
};

ProfileResult allocation_instances(const Profile& prof, unsigned threads) {
    const auto t0 = Clock::now();
    const std::size_t n = prof.n;
    ProfileResult out;
    for (int family = 0; family < 2; ++family) {
        for (int k = 0; k < prof.per_family; ++k) {
            const Seed seed = derive_seed(Seed{10 + static_cast<std::uint64_t>(family)}, k);
            const Graph g = family == 0 ? erdos_renyi(n, 0.16, seed) : barabasi_albert(n, 4, seed);
            GameConfig cfg;
            cfg.rounds = 50;
            cfg.estimator = ProbabilityEstimator::sampled(prof.runs, derive_seed(seed, 1), threads);
            cfg.tolerance = GameConfig::default_tolerance(cfg.estimator);
            const auto steady = run_game(g, SecurityProfile::uniform(n, 0.1), cfg).final_profile;

            InstanceResult r;
            r.name = (family == 0 ? "ER#" : "BA#") + std::to_string(k);
            const auto deg = degree_centrality(g);
            r.rank_correlation = spearman(steady.gamma, deg.values);
            r.untargeted = evaluate_allocation(g, steady, make_plan(AllocationStrategy::untargeted, 5.0, n), cfg).reduction;
            for (auto kind : {CentralityKind::degree, CentralityKind::betweenness, CentralityKind::investment}) {
                const auto c = kind == CentralityKind::investment ? investment_centrality(steady)
                                                                  : compute_centrality(g, kind, threads);
                for (auto s : {AllocationStrategy::upper, AllocationStrategy::lower}) {
                    r.reduction[{s, kind}] = evaluate_allocation(g, steady, make_plan(s, 5.0, n, &c), cfg).reduction;
                }
            }
            out.instances.push_back(std::move(r));
        }
    }
    out.seconds = seconds_since(t0);
    return out;
}

std::vector<const Profile*> profiles(const Options& opt) {
    if (opt.quick) return {&kReduced};
    return {&kReduced, &kFull};
}

const ProfileResult& cached_instances(const Profile& prof, const Options& opt) {
    static std::map<const Profile*, ProfileResult> cache;
    auto it = cache.find(&prof);
    if (it == cache.end()) it = cache.emplace(&prof, allocation_instances(prof, opt.threads)).first;
    return it->second;
}

Verdict allocation_orderings(const Options& opt) {
    Verdict v;
    for (const Profile* prof : profiles(opt)) {
        const auto& res = cached_instances(*prof, opt);
        v.detail << "  profile " << prof->label << '\n';
        for (const auto& r : res.instances) {
            v.detail << "    " << r.name << std::fixed << std::setprecision(2) << ": untargeted " << 100 * r.untargeted
                     << "%";
            for (auto kind : {CentralityKind::degree, CentralityKind::betweenness, CentralityKind::investment}) {
                const double up = r.reduction.at({AllocationStrategy::upper, kind});
                const double lo = r.reduction.at({AllocationStrategy::lower, kind});
                v.detail << ", " << to_string(kind) << " upper " << 100 * up << "% lower " << 100 * lo << "%";
                v.require(up > lo, r.name + " upper above lower (" + std::string(to_string(kind)) + ")");
                if (prof->check_range) v.require(up >= 0.05 && up <= 0.18, r.name + " upper reduction in [5%, 18%]");
            }
            v.detail << '\n';
            v.require(r.reduction.at({AllocationStrategy::upper, CentralityKind::betweenness}) >= r.untargeted,
                      r.name + " upper/betweenness at least untargeted");
        }
        v.detail << "    runtime " << std::setprecision(1) << res.seconds << " s\n";
        if (prof->runtime_limit > 0.0) v.require(res.seconds < prof->runtime_limit, "reduced profile runtime");
    }
    return v;
}

Verdict steady_state_structure(const Options& opt) {
    Verdict v;
    for (const Profile* prof : profiles(opt)) {
        v.detail << "  profile " << prof->label << '\n';
        for (const auto& r : cached_instances(*prof, opt).instances) {
            v.detail << "    " << r.name << ": Spearman(gamma, degree) = " << std::setprecision(3)
                     << r.rank_correlation << '\n';
            v.require(r.rank_correlation > 0.0, r.name + " positive rank correlation");
        }
    }
    return v;
}

Verdict property_suites(const Options& opt) {
    Verdict v;
    const auto t0 = Clock::now();
    if (opt.properties_binary.empty()) {
        v.require(false, "property binary path not configured");
        return v;
    }
    const std::string cmd = "\"" + opt.properties_binary + "\" --gtest_brief=1";
    const int rc = std::system(cmd.c_str());
    v.detail << "  " << opt.properties_binary << " exited with " << rc << '\n';
    v.require(rc == 0, "zero property failures");
    v.detail << "  runtime " << std::fixed << std::setprecision(1) << seconds_since(t0) << " s\n";
    return v;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Verdict(const Options&)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "two-node game rounds and steady state", two_node_game},
        {2, "two-node closed-form loss", two_node_loss},
        {3, "branching-tree best response", tree_best_response},
        {4, "exact versus sampled infection probabilities", oracle_agreement},
        {5, "random-graph phase transition", phase_transition},
        {6, "heterogeneity amplifies pandemics", heterogeneity},
        {7, "centrality-guided versus random edge removal", edge_removal},
        {8, "node splitting and its modified variant", node_splitting},
        {9, "allocation orderings", allocation_orderings},
        {10, "steady-state security follows degree", steady_state_structure},
        {11, "property suites", property_suites},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cyberlab acceptance checks"};
    Options opt;
    std::vector<int> selected;
    app.add_option("--criterion,-c", selected, "criteria to run (default: all)")->check(CLI::Range(1, 11));
    app.add_flag("--quick", opt.quick, "allocation criteria on the reduced profile only");
    app.add_option("--threads", opt.threads, "worker threads, 0 = all cores")->capture_default_str();
    app.add_option("--properties", opt.properties_binary, "path of the property-suite binary");
    CLI11_PARSE(app, argc, argv);
#ifdef CYBERLAB_PROPERTIES_BINARY
    if (opt.properties_binary.empty()) opt.properties_binary = CYBERLAB_PROPERTIES_BINARY;
#endif

    int failures = 0;
    for (const auto& c : criteria()) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
        Verdict v;
        try {
            v = c.run(opt);
        } catch (const std::exception& e) {
            v.require(false, std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << c.id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << c.title << '\n'
                  << v.detail.str() << std::flush;
        failures += !v.pass;
    }
    return failures == 0 ? 0 : 1;
}
