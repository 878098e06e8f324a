#include "cyberlab/topoctl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

#include "cyberlab/paths.hpp"

namespace cyberlab {
namespace {

constexpr std::uint64_t kConfirmStream = 0x5a17'0000'0000ULL;
constexpr std::uint64_t kPathStream = 0x9a7c'0000'0000ULL;

struct Verdict {
    bool controlled = false;
    double frequency = 0.0;
};

Verdict test_control(const Graph& g, const SirParams& params, const ControlCheck& check, std::uint64_t attempt) {
    const auto first = check_pandemic(g, params, check.criterion, check.check_runs, check.seed, check.threads);
    if (first.pandemic_prone || check.confirm_runs == 0) return {!first.pandemic_prone, first.frequency()};
    const auto confirm = check_pandemic(g, params, check.criterion, check.confirm_runs,
                                        derive_seed(check.seed, kConfirmStream + attempt), check.threads);
    return {!confirm.pandemic_prone, confirm.frequency()};
}

double path_or_nan(const Graph& g) {
    try {
        return avg_shortest_path(g);
    } catch (const std::domain_error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

std::string edge_label(const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

}  // namespace

std::vector<NodeId> InterventionResult::split_origins() const {
    std::set<NodeId> s;
    for (const auto& r : splits) s.insert(r.original);
    return {s.begin(), s.end()};
}

InterventionResult edge_removal_intervention(const Graph& g, const SirParams& params, const ControlCheck& check,
                                             std::size_t batch) {
    params.validate(g.node_count());
    InterventionResult res;
    res.original_nodes = g.node_count();
    res.original_edges = g.edge_count();
    if (batch == 0) batch = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.01 * static_cast<double>(g.edge_count()))));
    res.graph = g;
    res.path_before = path_or_nan(g);

    std::uint64_t attempt = 0;
    auto verdict = test_control(g, params, check, attempt++);
    res.frequency_before = verdict.frequency;
    res.log.push_back({0, "edge", "", verdict.frequency, res.path_before});

    std::size_t step = 0;
    while (!verdict.controlled) {
        if (res.graph.edge_count() == 0) {
            res.frequency_after = verdict.frequency;
            res.path_after = path_or_nan(res.graph);
            throw ControlNotAchieved("edge removal: graph exhausted before pandemic control", std::move(res));
        }
        const auto eb = edge_betweenness(res.graph, check.threads);
        std::vector<std::size_t> order(eb.edges.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return eb.values[a] > eb.values[b]; });
        const std::size_t take = std::min(batch, order.size());
        std::vector<Edge> cut;
        std::string target;
        for (std::size_t k = 0; k < take; ++k) {
            cut.push_back(eb.edges[order[k]]);
            if (!target.empty()) target += ' ';
            target += edge_label(eb.edges[order[k]]);
        }
        res.graph = res.graph.without_edges(cut);
        res.removed.insert(res.removed.end(), cut.begin(), cut.end());
        verdict = test_control(res.graph, params, check, attempt++);
        res.log.push_back({++step, "edge", target, verdict.frequency, path_or_nan(res.graph)});
    }
    res.controlled = true;
    res.frequency_after = verdict.frequency;
    res.path_after = res.log.back().avg_path_length;
    return res;
}

Graph random_edge_removal(const Graph& g, double fraction, Rng& rng) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("random edge removal: fraction must lie in [0, 1]");
    const auto& edges = g.edges();
    const auto m = edges.size();
    const auto k = std::min<std::size_t>(m, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(m))));
    if (k == 0) return g;
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t j = 0; j < k; ++j) {
        std::uniform_int_distribution<std::size_t> pick(j, m - 1);
        std::swap(idx[j], idx[pick(rng)]);
    }
    std::vector<char> drop(m, 0);
    for (std::size_t j = 0; j < k; ++j) drop[idx[j]] = 1;
    std::vector<Edge> kept;
    kept.reserve(m - k);
    for (std::size_t e = 0; e < m; ++e) {
        if (!drop[e]) kept.push_back(edges[e]);
    }
    return Graph(g.node_count(), std::move(kept));
}

Graph random_edge_removal(const Graph& g, double fraction, Seed seed) {
    Rng rng = make_rng(seed);
    return random_edge_removal(g, fraction, rng);
}

RandomRemovalResult random_removal_threshold(const Graph& g, const SirParams& params, const ControlCheck& check,
                                             double step, double max_fraction, std::size_t path_samples) {
    if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("random removal: step must lie in (0, 1]");
    params.validate(g.node_count());
    RandomRemovalResult res;
    const auto n = g.node_count();
    for (std::size_t j = 1;; ++j) {
        const double f = std::min(1.0, static_cast<double>(j) * step);
        if (f > max_fraction + 1e-12) break;
        auto factory = [&](Rng& rng) { return random_edge_removal(g, f, rng); };
        auto first = check_pandemic_resampled(factory, n, params, check.criterion, check.check_runs, check.seed);
        double freq = first.frequency();
        bool controlled = !first.pandemic_prone;
        if (controlled && check.confirm_runs > 0) {
            auto confirm = check_pandemic_resampled(factory, n, params, check.criterion, check.confirm_runs,
                                                    derive_seed(check.seed, kConfirmStream + j));
            freq = confirm.frequency();
            controlled = !confirm.pandemic_prone;
        }
        res.log.push_back({j, "random_edges", std::to_string(f), freq, std::numeric_limits<double>::quiet_NaN()});
        if (controlled) {
            res.controlled = true;
            res.fraction = f;
            res.frequency = freq;
            double sum = 0.0;
            std::size_t used = 0;
            for (std::size_t s = 0; s < path_samples; ++s) {
                const double l = path_or_nan(random_edge_removal(g, f, derive_seed(check.seed, kPathStream + s)));
                if (std::isnan(l)) continue;
                sum += l;
                ++used;
            }
            res.avg_path_length = used ? sum / static_cast<double>(used) : std::numeric_limits<double>::quiet_NaN();
            res.log.back().avg_path_length = res.avg_path_length;
            return res;
        }
        if (f >= 1.0) break;
    }
    return res;
}

std::vector<NodeId> alternating_split_set(const Graph& g, NodeId i, std::span<const double> centrality) {
    if (centrality.size() != g.node_count()) throw std::invalid_argument("split: centrality length mismatch");
    const auto nb = g.neighbors(i);
    if (nb.empty()) throw std::invalid_argument("split: node " + std::to_string(i) + " is isolated");
    std::vector<NodeId> ranked(nb.begin(), nb.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [&](NodeId a, NodeId b) { return centrality[a] > centrality[b]; });
    std::vector<NodeId> moved;
    for (std::size_t r = 1; r < ranked.size(); r += 2) moved.push_back(ranked[r]);
    return moved;
}

std::vector<NodeId> low_degree_split_set(const Graph& g, NodeId i) {
    const auto nb = g.neighbors(i);
    if (nb.empty()) throw std::invalid_argument("split: node " + std::to_string(i) + " is isolated");
    std::vector<NodeId> ranked(nb.begin(), nb.end());
    std::stable_sort(ranked.begin(), ranked.end(), [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
    const std::size_t keep = (ranked.size() + 1) / 2;
    return {ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end()};
}

Graph apply_split(const Graph& g, NodeId i, std::span<const NodeId> moved) {
    if (i >= g.node_count()) throw std::out_of_range("split: node out of range");
    const auto created = static_cast<NodeId>(g.node_count());
    std::vector<char> moving(g.node_count(), 0);
    for (NodeId j : moved) {
        if (!g.has_edge(i, j)) throw std::invalid_argument("split: " + std::to_string(j) + " is not a neighbor");
        moving[j] = 1;
    }
    std::vector<Edge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        if (e.u == i && moving[e.v]) {
            edges.emplace_back(created, e.v);
        } else if (e.v == i && moving[e.u]) {
            edges.emplace_back(created, e.u);
        } else {
            edges.push_back(e);
        }
    }
    return Graph(g.node_count() + 1, std::move(edges));
}

Graph split_node(const Graph& g, NodeId i, const CentralityVector& centrality) {
    const auto moved = alternating_split_set(g, i, centrality.values);
    return apply_split(g, i, moved);
}

Graph split_node(const Graph& g, NodeId i, CentralityKind kind, unsigned threads) {
    return split_node(g, i, compute_centrality(g, kind, threads));
}

Graph split_node_modified(const Graph& g, NodeId i) {
    const auto moved = low_degree_split_set(g, i);
    return apply_split(g, i, moved);
}

std::string_view to_string(SplitRule rule) {
    return rule == SplitRule::alternating ? "alternating" : "keep_hubs";
}

SplitRule parse_split_rule(std::string_view name) {
    if (name == "alternating" || name == "standard") return SplitRule::alternating;
    if (name == "keep_hubs" || name == "modified") return SplitRule::keep_hubs;
    throw std::invalid_argument("unknown split rule '" + std::string(name) + "'");
}

InterventionResult splitting_intervention(const Graph& g, const SirParams& params, const ControlCheck& check,
                                          CentralityKind kind, SplitRule rule, std::size_t max_splits) {
    params.validate(g.node_count());
    InterventionResult res;
    res.original_nodes = g.node_count();
    res.original_edges = g.edge_count();
    res.graph = g;
    res.path_before = path_or_nan(g);
    SirParams current = params;
    std::vector<NodeId> origin(g.node_count());
    std::iota(origin.begin(), origin.end(), NodeId{0});

    std::uint64_t attempt = 0;
    auto verdict = test_control(g, params, check, attempt++);
    res.frequency_before = verdict.frequency;
    res.log.push_back({0, "split", "", verdict.frequency, res.path_before});

    while (!verdict.controlled) {
        if (res.splits.size() >= max_splits) {
            res.frequency_after = verdict.frequency;
            res.path_after = res.log.back().avg_path_length;
            throw ControlNotAchieved("node splitting: no pandemic control within " + std::to_string(max_splits) +
                                         " splits",
                                     std::move(res));
        }
        const auto c = compute_centrality(res.graph, kind, check.threads);
        const NodeId i = argmax(c.values);
        if (res.graph.degree(i) == 0) {
            res.frequency_after = verdict.frequency;
            res.path_after = res.log.back().avg_path_length;
            throw ControlNotAchieved("node splitting: no edges left to separate", std::move(res));
        }
        SplitRecord rec;
        rec.node = i;
        rec.created = static_cast<NodeId>(res.graph.node_count());
        rec.original = origin[i];
        rec.moved = rule == SplitRule::alternating ? alternating_split_set(res.graph, i, c.values)
                                                   : low_degree_split_set(res.graph, i);
        rec.degenerate = rec.moved.empty();
        res.graph = apply_split(res.graph, i, rec.moved);
        current.gamma.push_back(current.gamma[i]);
        origin.push_back(origin[i]);
        res.splits.push_back(rec);
        verdict = test_control(res.graph, current, check, attempt++);
        res.log.push_back({res.splits.size(), "split", std::to_string(i), verdict.frequency, path_or_nan(res.graph)});
    }
    res.controlled = true;
    res.frequency_after = verdict.frequency;
    res.path_after = res.log.back().avg_path_length;
    return res;
}

void write_intervention_log_csv(std::ostream& out, std::span<const InterventionStep> log) {
    out << "step,action,target,pandemic_frequency,avg_path_length\n";
    for (const auto& s : log) {
        out << s.step << ',' << s.action << ',' << s.target << ',' << s.pandemic_frequency << ',';
        if (!std::isnan(s.avg_path_length)) out << s.avg_path_length;
        out << '\n';
    }
}

}  // namespace cyberlab
