#include "cyberlab/risk_allocation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "cyberlab/parallel.hpp"
#include "cyberlab/stats.hpp"

namespace cyberlab {

ContactCoefficients contact_coefficients_edges(std::size_t n, std::span<const Edge> removed) {
    if (removed.empty()) throw std::invalid_argument("contact coefficients: no removed edges");
    ContactCoefficients cc;
    cc.basis.assign(n, 0.0);
    for (const auto& e : removed) {
        if (e.v >= n) throw std::out_of_range("contact coefficients: edge endpoint out of range");
        cc.basis[e.u] += 1.0;
        cc.basis[e.v] += 1.0;
    }
    const double denom = 2.0 * static_cast<double>(removed.size());
    cc.c.resize(n);
    for (std::size_t i = 0; i < n; ++i) cc.c[i] = cc.basis[i] / denom;
    return cc;
}

ContactCoefficients contact_coefficients_splits(std::span<const NodeId> split_set, std::span<const double> centrality) {
    ContactCoefficients cc;
    cc.basis.assign(centrality.size(), 0.0);
    std::vector<char> seen(centrality.size(), 0);
    double denom = 0.0;
    for (NodeId i : split_set) {
        if (i >= centrality.size()) throw std::out_of_range("contact coefficients: node out of range");
        if (seen[i]) continue;
        seen[i] = 1;
        cc.basis[i] = centrality[i];
        denom += centrality[i];
    }
    if (!(denom > 0.0)) throw std::invalid_argument("contact coefficients: split set has zero total centrality");
    cc.c.resize(centrality.size());
    for (std::size_t i = 0; i < centrality.size(); ++i) cc.c[i] = cc.basis[i] / denom;
    return cc;
}

std::vector<double> surcharge(std::span<const double> base, std::span<const double> c, double pool) {
    if (base.size() != c.size()) throw std::invalid_argument("surcharge: length mismatch");
    if (!(pool >= 0.0)) throw std::invalid_argument("surcharge: pool must be >= 0");
    std::vector<double> out(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) out[i] = base[i] + c[i] * pool;
    return out;
}

std::string_view to_string(RiskMeasure m) { return m == RiskMeasure::value_at_risk ? "VaR" : "ES"; }

RiskMeasure parse_risk_measure(std::string_view name) {
    if (name == "VaR" || name == "var") return RiskMeasure::value_at_risk;
    if (name == "ES" || name == "es") return RiskMeasure::expected_shortfall;
    throw std::invalid_argument("unknown risk measure '" + std::string(name) + "'");
}

void RiskSpec::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("risk level alpha must lie in (0, 1)");
}

double risk_measure(std::span<const double> samples, const RiskSpec& spec) {
    spec.validate();
    if (samples.empty()) throw std::invalid_argument("risk measure of empty sample");
    if (spec.measure == RiskMeasure::value_at_risk) return quantile_higher(samples, spec.alpha);
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double pos = spec.alpha * static_cast<double>(sorted.size() - 1);
    const auto idx = std::min(sorted.size() - 1, static_cast<std::size_t>(std::ceil(pos - 1e-12)));
    const double tail = std::accumulate(sorted.begin() + static_cast<std::ptrdiff_t>(idx), sorted.end(), 0.0);
    return tail / static_cast<double>(sorted.size() - idx);
}

PairedLosses paired_outbreak_losses(const Graph& g, const SirParams& params, const Graph& gc,
                                    const SirParams& params_c, std::uint64_t runs, Seed seed, unsigned threads) {
    params.validate(g.node_count());
    params_c.validate(gc.node_count());
    PairedLosses out;
    out.before.resize(runs);
    out.after.resize(runs);
    constexpr std::size_t kBlock = 1024;
    for_each_block(runs, kBlock, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        SirSimulator a(g, params);
        SirSimulator b(gc, params_c);
        for (std::size_t r = begin; r < end; ++r) {
            Rng ra = make_rng(seed, r);
            a.run(ra, InitialCondition::uniform());
            Rng rb = make_rng(seed, r);
            b.run(rb, InitialCondition::uniform());
            out.before[r] = static_cast<double>(a.final_size());
            out.after[r] = static_cast<double>(b.final_size());
        }
    });
    return out;
}

PremiumResult pandemic_loss_premiums(std::span<const double> loss, std::span<const double> loss_c,
                                     const RiskSpec& spec, std::span<const double> c) {
    if (loss.size() != loss_c.size()) throw std::invalid_argument("premiums: paired samples differ in count");
    PremiumResult res;
    res.excess.resize(loss.size());
    for (std::size_t r = 0; r < loss.size(); ++r) res.excess[r] = std::max(loss[r] - loss_c[r], 0.0);
    res.capital = risk_measure(res.excess, spec);
    res.premiums.assign(c.size(), 0.0);
    if (res.capital > 0.0) {
        for (std::size_t i = 0; i < c.size(); ++i) res.premiums[i] = c[i] * res.capital;
    }
    return res;
}

SirParams extend_params(const SirParams& params, std::size_t n) {
    if (params.gamma.empty()) throw std::invalid_argument("extend_params: no recovery rates");
    SirParams out = params;
    if (out.gamma.size() > n) throw std::invalid_argument("extend_params: cannot shrink");
    const double g = params.gamma.front();
    if (std::any_of(params.gamma.begin(), params.gamma.end(), [&](double x) { return x != g; })) {
        throw std::invalid_argument("extend_params: rates are not homogeneous");
    }
    out.gamma.resize(n, g);
    return out;
}

void write_coefficients_csv(std::ostream& out, const ContactCoefficients& cc, std::span<const double> surcharged,
                            std::span<const double> premiums) {
    out << "node,basis,c,surcharge,premium\n";
    for (std::size_t i = 0; i < cc.c.size(); ++i) {
        out << i << ',' << cc.basis[i] << ',' << cc.c[i] << ',';
        if (i < surcharged.size()) out << surcharged[i];
        out << ',';
        if (i < premiums.size()) out << premiums[i];
        out << '\n';
    }
}

}  // namespace cyberlab
