#include "cyberlab/allocate.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace cyberlab {

std::string_view to_string(AllocationStrategy s) {
    switch (s) {
        case AllocationStrategy::untargeted: return "untargeted";
        case AllocationStrategy::upper: return "upper";
        case AllocationStrategy::lower: return "lower";
        case AllocationStrategy::centralized_upper: return "centralized_upper";
    }
    return "?";
}

AllocationStrategy parse_allocation_strategy(std::string_view name) {
    if (name == "untargeted") return AllocationStrategy::untargeted;
    if (name == "upper") return AllocationStrategy::upper;
    if (name == "lower") return AllocationStrategy::lower;
    if (name == "centralized_upper") return AllocationStrategy::centralized_upper;
    throw std::invalid_argument("unknown allocation strategy '" + std::string(name) + "'");
}

namespace {

void require_budget(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("allocation budget must be > 0");
}

}  // namespace

std::vector<double> untargeted(double beta, std::size_t n) {
    require_budget(beta);
    if (n < 1) throw std::invalid_argument("untargeted allocation needs at least one node");
    return std::vector<double>(n, beta / static_cast<double>(n));
}

std::vector<double> upper(double beta, std::span<const double> c) {
    require_budget(beta);
    auto w = allocation_weights(c);
    for (double& x : w) x *= beta;
    return w;
}

std::vector<double> lower(double beta, std::span<const double> c) {
    require_budget(beta);
    auto inv = inverse_weights(allocation_weights(c));
    double total = 0.0;
    for (double x : inv) total += x;
    for (double& x : inv) x = beta * x / total;
    return inv;
}

std::vector<double> centralized_upper(double beta, std::span<const double> c, double fraction) {
    require_budget(beta);
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("centralized allocation fraction must lie in (0, 1]");
    }
    const std::size_t n = c.size();
    auto targets = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
    targets = std::min(std::max<std::size_t>(targets, 1), n);
    const auto order = rank_descending(c);

    double total = 0.0;
    for (std::size_t r = 0; r < targets; ++r) total += c[order[r]];
    if (!(total > 0.0)) throw std::invalid_argument("targeted nodes have zero total centrality");

    std::vector<double> out(n, 0.0);
    for (std::size_t r = 0; r < targets; ++r) out[order[r]] = beta * c[order[r]] / total;
    return out;
}

AllocationPlan make_plan(AllocationStrategy strategy, double beta, std::size_t n, const CentralityVector* centrality,
                         double fraction) {
    AllocationPlan plan;
    plan.strategy = strategy;
    plan.budget = beta;
    plan.fraction = fraction;
    if (strategy == AllocationStrategy::untargeted) {
        plan.additions = untargeted(beta, n);
        plan.fraction = 1.0;
        return plan;
    }
    if (centrality == nullptr) throw std::invalid_argument("targeted allocation needs a centrality vector");
    if (centrality->size() != n) throw std::invalid_argument("centrality length differs from node count");
    plan.centrality = centrality->kind;
    switch (strategy) {
        case AllocationStrategy::upper: plan.additions = upper(beta, centrality->values); break;
        case AllocationStrategy::lower: plan.additions = lower(beta, centrality->values); break;
        case AllocationStrategy::centralized_upper:
            plan.additions = centralized_upper(beta, centrality->values, fraction);
            break;
        case AllocationStrategy::untargeted: break;
    }
    if (strategy != AllocationStrategy::centralized_upper) plan.fraction = 1.0;
    return plan;
}

AllocationOutcome evaluate_allocation(const Graph& g, const SecurityProfile& steady, const AllocationPlan& plan,
                                      const GameConfig& config) {
    const std::size_t n = g.node_count();
    if (steady.size() != n || plan.additions.size() != n) {
        throw std::invalid_argument("evaluate_allocation: profile or plan length differs from node count");
    }
    SecurityProfile boosted = steady;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(plan.additions[i] >= 0.0)) throw std::invalid_argument("allocation additions must be >= 0");
        boosted.gamma[i] += plan.additions[i];
    }
    AllocationOutcome out;
    out.before = accumulated_expenses(g, steady, config);
    out.after = accumulated_expenses(g, boosted, config);
    out.expenses_before = out.before.total;
    out.expenses_after = out.after.total;
    out.reduction = 1.0 - out.expenses_after / out.expenses_before;
    return out;
}

void write_allocation_csv(std::ostream& out, std::span<const AllocationRow> rows, std::uint64_t runs, Seed seed) {
    out << "strategy,centrality,targeted_fraction,expenses_before,expenses_after,reduction_pct,runs,seed\n";
    for (const auto& row : rows) {
        out << to_string(row.plan.strategy) << ','
            << (row.plan.centrality ? to_string(*row.plan.centrality) : std::string_view("none")) << ','
            << row.plan.fraction << ',' << row.outcome.expenses_before << ',' << row.outcome.expenses_after << ','
            << 100.0 * row.outcome.reduction << ',' << runs << ',' << seed.value << '\n';
    }
}

}  // namespace cyberlab
