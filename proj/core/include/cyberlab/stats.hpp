#pragma once

#include <span>
#include <vector>

namespace cyberlab {

double mean(std::span<const double> x);

/// Ranks 1..n with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> x);

/// Spearman rank correlation (Pearson correlation of average ranks).
/// Returns 0 when either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

/// Empirical alpha-quantile using the higher order statistic at
/// position alpha * (n - 1).
double quantile_higher(std::span<const double> samples, double alpha);

}  // namespace cyberlab
