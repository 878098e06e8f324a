#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "cyberlab/epidemic.hpp"
#include "cyberlab/graph.hpp"

namespace cyberlab {

struct ContactCoefficients {
    std::vector<double> basis;  // removed incidences, or centrality on the split set
    std::vector<double> c;      // normalized shares, sum 1
};

/// c_i = (number of removed edges at i) / (2 |removed|).
ContactCoefficients contact_coefficients_edges(std::size_t n, std::span<const Edge> removed);

/// c_i = C(i) / sum_{j in split set} C(j) on the split set, 0 elsewhere.
ContactCoefficients contact_coefficients_splits(std::span<const NodeId> split_set, std::span<const double> centrality);

/// pi_i + c_i * pool.
std::vector<double> surcharge(std::span<const double> base, std::span<const double> c, double pool);

enum class RiskMeasure { value_at_risk, expected_shortfall };

std::string_view to_string(RiskMeasure m);
RiskMeasure parse_risk_measure(std::string_view name);

struct RiskSpec {
    RiskMeasure measure = RiskMeasure::expected_shortfall;
    double alpha = 0.95;

    void validate() const;
};

/// Empirical VaR (higher order statistic) or ES (mean of the order
/// statistics from the VaR position upward).
double risk_measure(std::span<const double> samples, const RiskSpec& spec);

struct PairedLosses {
    std::vector<double> before;  // L
    std::vector<double> after;   // L_c
};

/// Final outbreak sizes on g and gc under common random numbers: run r of
/// both ensembles uses stream r of `seed`, with a uniform single seed node.
PairedLosses paired_outbreak_losses(const Graph& g, const SirParams& params, const Graph& gc,
                                    const SirParams& params_c, std::uint64_t runs, Seed seed, unsigned threads = 1);

struct PremiumResult {
    std::vector<double> excess;  // L_e = max(L - L_c, 0) per pair
    double capital = 0.0;        // rho(L_e)
    std::vector<double> premiums;
};

PremiumResult pandemic_loss_premiums(std::span<const double> loss, std::span<const double> loss_c,
                                     const RiskSpec& spec, std::span<const double> c);

/// Homogeneous-rate helper for graphs grown by splitting.
SirParams extend_params(const SirParams& params, std::size_t n);

/// CSV `node,basis,c,surcharge,premium`.
void write_coefficients_csv(std::ostream& out, const ContactCoefficients& cc, std::span<const double> surcharged,
                            std::span<const double> premiums);

}  // namespace cyberlab
