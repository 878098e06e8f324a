#include "cyberlab/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cyberlab/parallel.hpp"

namespace cyberlab {

void SirParams::validate(std::size_t n) const {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw std::invalid_argument("SIR: tau must be finite and >= 0");
    if (gamma.size() != n) {
        throw std::invalid_argument("SIR: expected " + std::to_string(n) + " recovery rates, got " +
                                    std::to_string(gamma.size()));
    }
    for (double g : gamma) {
        if (!(g > 0.0) || !std::isfinite(g)) throw std::invalid_argument("SIR: recovery rates must be > 0");
    }
}

void InitialCondition::validate(std::size_t n) const {
    switch (policy) {
        case Policy::uniform_random_single:
            if (n == 0) throw std::invalid_argument("initial condition: empty graph");
            return;
        case Policy::fixed_node:
            if (nodes.size() != 1) throw std::invalid_argument("initial condition: fixed_node needs one node");
            break;
        case Policy::fixed_set:
            if (nodes.empty()) throw std::invalid_argument("initial condition: empty fixed set");
            break;
    }
    for (NodeId i : nodes) {
        if (i >= n) throw std::invalid_argument("initial condition: node " + std::to_string(i) + " out of range");
    }
}

// --- SirSimulator ------------------------------------------------------------

SirSimulator::SirSimulator(const Graph& g, const SirParams& params)
    : graph_(&g), tau_(params.tau), gamma_(params.gamma) {
    const std::size_t n = g.node_count();
    params.validate(n);
    leaves_ = 1;
    while (leaves_ < n) leaves_ <<= 1;
    tree_.assign(2 * leaves_, 0.0);
    state_.assign(n, NodeState::susceptible);
    infected_neighbors_.assign(n, 0);
    infected_at_.assign(n, 0.0);
    recovered_at_.assign(n, 0.0);
    infected_order_.reserve(n);
}

void SirSimulator::set_rate(NodeId i, double rate) {
    std::size_t k = leaves_ + i;
    tree_[k] = rate;
    // Parents are recomputed from their children, so sums never drift.
    for (k >>= 1; k >= 1; k >>= 1) tree_[k] = tree_[2 * k] + tree_[2 * k + 1];
}

NodeId SirSimulator::pick(double u) const {
    std::size_t k = 1;
    while (k < leaves_) {
        const double left = tree_[2 * k];
        const double right = tree_[2 * k + 1];
        if (u < left || right <= 0.0) {
            k = 2 * k;
        } else {
            u -= left;
            k = 2 * k + 1;
        }
    }
    return static_cast<NodeId>(k - leaves_);
}

void SirSimulator::infect(NodeId i, double t, SirEvent::Kind kind) {
    state_[i] = NodeState::infected;
    infected_at_[i] = t;
    infected_order_.push_back(i);
    ++active_;
    set_rate(i, gamma_[i]);
    for (NodeId w : graph_->neighbors(i)) {
        ++infected_neighbors_[w];
        if (state_[w] == NodeState::susceptible) set_rate(w, tau_ * infected_neighbors_[w]);
    }
    if (record_) events_.push_back({t, i, kind});
}

void SirSimulator::recover(NodeId i, double t) {
    state_[i] = NodeState::recovered;
    recovered_at_[i] = t;
    --active_;
    set_rate(i, 0.0);
    for (NodeId w : graph_->neighbors(i)) {
        --infected_neighbors_[w];
        if (state_[w] == NodeState::susceptible) set_rate(w, tau_ * infected_neighbors_[w]);
    }
    if (record_) events_.push_back({t, i, SirEvent::Kind::recovery});
}

void SirSimulator::run(Rng& rng, const InitialCondition& init, const Options& options) {
    const std::size_t n = graph_->node_count();
    init.validate(n);
    std::fill(tree_.begin(), tree_.end(), 0.0);
    std::fill(state_.begin(), state_.end(), NodeState::susceptible);
    std::fill(infected_neighbors_.begin(), infected_neighbors_.end(), 0u);
    infected_order_.clear();
    events_.clear();
    active_ = 0;
    record_ = options.record_events;
    truncated_ = false;

    if (init.policy == InitialCondition::Policy::uniform_random_single) {
        std::uniform_int_distribution<NodeId> pick_node(0, static_cast<NodeId>(n - 1));
        infect(pick_node(rng), 0.0, SirEvent::Kind::seeded);
    } else {
        for (NodeId i : init.nodes) {
            if (state_[i] == NodeState::susceptible) infect(i, 0.0, SirEvent::Kind::seeded);
        }
    }

    double t = 0.0;
    while (active_ > 0) {
        if (options.stop_at_size != 0 && infected_order_.size() >= options.stop_at_size) {
            truncated_ = true;
            return;
        }
        const double total = tree_[1];
        t += std::exponential_distribution<double>(total)(rng);
        const NodeId i = pick(uniform01(rng) * total);
        if (state_[i] == NodeState::infected) {
            recover(i, t);
        } else {
            infect(i, t, SirEvent::Kind::infection);
        }
    }
}

double SirSimulator::infected_duration(NodeId i) const {
    if (state_.at(i) != NodeState::recovered) return 0.0;
    return recovered_at_[i] - infected_at_[i];
}

std::size_t SirSimulator::count(NodeState s) const {
    return static_cast<std::size_t>(std::count(state_.begin(), state_.end(), s));
}

OutbreakSample SirSimulator::sample() const {
    const std::size_t n = graph_->node_count();
    OutbreakSample out;
    out.ever_infected.assign(n, 0);
    out.infected_duration.assign(n, 0.0);
    for (NodeId i : infected_order_) {
        out.ever_infected[i] = 1;
        out.infected_duration[i] = infected_duration(i);
    }
    out.final_size = infected_order_.size();
    out.events = events_;
    return out;
}

OutbreakSample gillespie_run(const Graph& g, const SirParams& params, const InitialCondition& init, Seed seed,
                             bool record_events) {
    SirSimulator sim(g, params);
    Rng rng = make_rng(seed);
    sim.run(rng, init, {record_events, 0});
    return sim.sample();
}

// --- ensembles ---------------------------------------------------------------

namespace {

constexpr std::size_t kRunBlock = 1024;
constexpr std::size_t kBlocksPerWave = 64;

struct BlockTotals {
    std::vector<std::uint64_t> infected;
    std::vector<double> duration;
    std::vector<std::uint64_t> histogram;
};

}  // namespace

double EnsembleStats::infection_probability(NodeId i) const {
    if (runs == 0) return 0.0;
    return static_cast<double>(infection_count.at(i)) / static_cast<double>(runs);
}

std::vector<double> EnsembleStats::infection_probabilities() const {
    std::vector<double> p(node_count());
    for (NodeId i = 0; i < p.size(); ++i) p[i] = infection_probability(i);
    return p;
}

EnsembleStats monte_carlo(const Graph& g, const SirParams& params, const InitialCondition& init,
                          std::uint64_t runs, Seed seed, unsigned threads) {
    const std::size_t n = g.node_count();
    params.validate(n);
    init.validate(n);
    if (runs < 1) throw std::invalid_argument("monte_carlo: runs must be >= 1");

    EnsembleStats stats;
    stats.seed = seed;
    stats.runs = runs;
    stats.infection_count.assign(n, 0);
    stats.size_histogram.assign(n + 1, 0);
    std::vector<double> duration_sum(n, 0.0);

    // Waves bound memory; each wave's blocks are reduced in block order.
    const std::uint64_t wave_runs = kRunBlock * kBlocksPerWave;
    for (std::uint64_t wave_start = 0; wave_start < runs; wave_start += wave_runs) {
        const std::uint64_t wave_count = std::min<std::uint64_t>(wave_runs, runs - wave_start);
        std::vector<BlockTotals> blocks((wave_count + kRunBlock - 1) / kRunBlock);
        for_each_block(wave_count, kRunBlock, threads, [&](std::size_t b, std::size_t begin, std::size_t end) {
            SirSimulator sim(g, params);
            BlockTotals& acc = blocks[b];
            acc.infected.assign(n, 0);
            acc.duration.assign(n, 0.0);
            acc.histogram.assign(n + 1, 0);
            for (std::size_t r = begin; r < end; ++r) {
                Rng rng = make_rng(seed, wave_start + r);
                sim.run(rng, init);
                for (NodeId i : sim.infected_nodes()) {
                    ++acc.infected[i];
                    acc.duration[i] += sim.infected_duration(i);
                }
                ++acc.histogram[sim.final_size()];
            }
        });
        for (const BlockTotals& acc : blocks) {
            for (std::size_t i = 0; i < n; ++i) {
                stats.infection_count[i] += acc.infected[i];
                duration_sum[i] += acc.duration[i];
            }
            for (std::size_t s = 0; s <= n; ++s) stats.size_histogram[s] += acc.histogram[s];
        }
    }
    stats.mean_infected_time.resize(n);
    for (std::size_t i = 0; i < n; ++i) stats.mean_infected_time[i] = duration_sum[i] / static_cast<double>(runs);
    return stats;
}

std::vector<std::uint32_t> outbreak_sizes(const Graph& g, const SirParams& params, const InitialCondition& init,
                                          std::uint64_t runs, Seed seed, unsigned threads) {
    params.validate(g.node_count());
    init.validate(g.node_count());
    std::vector<std::uint32_t> sizes(runs, 0);
    for_each_block(runs, kRunBlock, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        SirSimulator sim(g, params);
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng = make_rng(seed, r);
            sim.run(rng, init);
            sizes[r] = static_cast<std::uint32_t>(sim.final_size());
        }
    });
    return sizes;
}

std::vector<std::pair<std::size_t, double>> outbreak_histogram(const EnsembleStats& stats) {
    if (stats.runs < 1) throw std::invalid_argument("outbreak_histogram: empty ensemble");
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t s = 0; s < stats.size_histogram.size(); ++s) {
        if (stats.size_histogram[s] == 0) continue;
        out.emplace_back(s, static_cast<double>(stats.size_histogram[s]) / static_cast<double>(stats.runs));
    }
    return out;
}

std::size_t pandemic_size_threshold(double q, std::size_t n) {
    // Tolerance keeps q * n that is integral up to rounding (0.1 * 1000) exact.
    return static_cast<std::size_t>(std::ceil(q * static_cast<double>(n) - 1e-9));
}

PandemicClassification classify_pandemic(const EnsembleStats& stats, double size_fraction, double freq_threshold) {
    if (!(size_fraction > 0.0 && size_fraction < 1.0)) {
        throw std::invalid_argument("classify_pandemic: size fraction must lie in (0, 1)");
    }
    if (!(freq_threshold > 0.0 && freq_threshold < 1.0)) {
        throw std::invalid_argument("classify_pandemic: frequency threshold must lie in (0, 1)");
    }
    if (stats.runs < 1) throw std::invalid_argument("classify_pandemic: empty ensemble");
    const std::size_t limit = pandemic_size_threshold(size_fraction, stats.node_count());
    std::uint64_t hits = 0;
    for (std::size_t s = limit; s < stats.size_histogram.size(); ++s) hits += stats.size_histogram[s];
    const double freq = static_cast<double>(hits) / static_cast<double>(stats.runs);
    return {freq >= freq_threshold, freq};
}

PandemicCheck check_pandemic(const Graph& g, const SirParams& params, PandemicCriterion criterion,
                             std::uint64_t runs, Seed seed, unsigned threads, bool early_exit) {
    const std::size_t n = g.node_count();
    params.validate(n);
    if (runs < 1) throw std::invalid_argument("check_pandemic: runs must be >= 1");
    const std::size_t limit = pandemic_size_threshold(criterion.size_fraction, n);
    const auto needed = static_cast<std::uint64_t>(std::ceil(criterion.frequency * static_cast<double>(runs)));

    PandemicCheck out;
    out.runs_requested = runs;
    constexpr std::uint64_t kWave = 2048;
    constexpr std::size_t kBlock = 256;
    for (std::uint64_t wave_start = 0; wave_start < runs; wave_start += kWave) {
        const std::uint64_t wave_count = std::min<std::uint64_t>(kWave, runs - wave_start);
        std::vector<std::uint64_t> hits((wave_count + kBlock - 1) / kBlock, 0);
        for_each_block(wave_count, kBlock, threads, [&](std::size_t b, std::size_t begin, std::size_t end) {
            SirSimulator sim(g, params);
            for (std::size_t r = begin; r < end; ++r) {
                Rng rng = make_rng(seed, wave_start + r);
                sim.run(rng, InitialCondition::uniform(), {false, limit});
                if (sim.final_size() >= limit) ++hits[b];
            }
        });
        for (auto h : hits) out.pandemic_runs += h;
        out.runs_evaluated += wave_count;
        if (early_exit && needed > 0 && out.pandemic_runs >= needed) break;
    }
    out.pandemic_prone = static_cast<double>(out.pandemic_runs) >= criterion.frequency * static_cast<double>(runs);
    return out;
}

ThresholdIndex epidemic_threshold(double mean_degree, double mean_sq_degree, double tau, double gamma) {
    if (!(mean_degree > 0.0)) throw std::invalid_argument("epidemic_threshold: E[K] must be > 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("epidemic_threshold: gamma must be > 0");
    const double index = tau * (mean_sq_degree - mean_degree) / ((tau + gamma) * mean_degree);
    return {index, index > 1.0};
}

ThresholdIndex poisson_threshold(double lambda, double tau, double gamma) {
    return epidemic_threshold(lambda, lambda + lambda * lambda, tau, gamma);
}

std::pair<double, double> degree_moments(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) throw std::invalid_argument("degree_moments: empty graph");
    double s1 = 0.0;
    double s2 = 0.0;
    for (NodeId i = 0; i < n; ++i) {
        const auto k = static_cast<double>(g.degree(i));
        s1 += k;
        s2 += k * k;
    }
    return {s1 / static_cast<double>(n), s2 / static_cast<double>(n)};
}

void write_histogram_csv(std::ostream& out, const EnsembleStats& stats) {
    out << "size,count,frequency\n";
    for (std::size_t s = 0; s < stats.size_histogram.size(); ++s) {
        const auto c = stats.size_histogram[s];
        if (c == 0) continue;
        out << s << ',' << c << ',' << static_cast<double>(c) / static_cast<double>(stats.runs) << '\n';
    }
}

void write_ensemble_json(std::ostream& out, const EnsembleStats& stats) {
    nlohmann::json j;
    j["seed"] = stats.seed.value;
    j["runs"] = stats.runs;
    j["infection_count"] = stats.infection_count;
    j["infection_probability"] = stats.infection_probabilities();
    j["mean_infected_time"] = stats.mean_infected_time;
    out << j.dump(2) << '\n';
}

}  // namespace cyberlab
