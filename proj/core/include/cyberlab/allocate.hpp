#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cyberlab/centrality.hpp"
#include "cyberlab/secgame.hpp"

namespace cyberlab {

enum class AllocationStrategy { untargeted, upper, lower, centralized_upper };

std::string_view to_string(AllocationStrategy s);
AllocationStrategy parse_allocation_strategy(std::string_view name);

/// Extra security levels gamma^all handed to each node.
struct AllocationPlan {
    AllocationStrategy strategy = AllocationStrategy::untargeted;
    double budget = 0.0;
    std::optional<CentralityKind> centrality;  // targeted strategies only
    double fraction = 1.0;                     // centralized_upper only
    std::vector<double> additions;
};

/// beta / n for every node.
std::vector<double> untargeted(double beta, std::size_t n);

/// beta * w_i with w the allocation weights of c.
std::vector<double> upper(double beta, std::span<const double> c);

/// beta * inv_i / sum_j inv_j with inv the inverse allocation weights;
/// zero-centrality nodes receive nothing.
std::vector<double> lower(double beta, std::span<const double> c);

/// Upper allocation restricted to the ceil(p * N) most central nodes
/// (ties by ascending id); everyone else receives 0.
std::vector<double> centralized_upper(double beta, std::span<const double> c, double fraction);

AllocationPlan make_plan(AllocationStrategy strategy, double beta, std::size_t n,
                         const CentralityVector* centrality = nullptr, double fraction = 1.0);

struct AllocationOutcome {
    double expenses_before = 0.0;
    double expenses_after = 0.0;
    /// 1 - after / before (negative when the injection raises expenses).
    double reduction = 0.0;
    ExpenseReport before;
    ExpenseReport after;
};

/// Expenses at the steady state and at steady + additions, without letting
/// the nodes re-optimize. Both sides use the same estimator seed.
AllocationOutcome evaluate_allocation(const Graph& g, const SecurityProfile& steady, const AllocationPlan& plan,
                                      const GameConfig& config);

struct AllocationRow {
    AllocationPlan plan;
    AllocationOutcome outcome;
};

/// CSV `strategy,centrality,targeted_fraction,expenses_before,expenses_after,reduction_pct,runs,seed`.
void write_allocation_csv(std::ostream& out, std::span<const AllocationRow> rows, std::uint64_t runs, Seed seed);

}  // namespace cyberlab
