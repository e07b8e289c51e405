#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dscent/centrality.hpp"
#include "dscent/simulate.hpp"

namespace dscent {

/// Kendall's tau between two equal-length score lists:
///   tau = 2/(n(n-1)) * sum_{i<j} sgn[(y_i-y_j)(z_i-z_j)],
/// with sgn(0) = 0, so tied pairs contribute zero and there is no tie
/// normalization. Evaluated by an O(n log n) merge count that agrees with
/// the naive pairwise sum exactly, ties included. Tie comparisons use exact
/// floating-point equality. Throws DataError on length mismatch or n < 2.
double kendall_tau(std::span<const double> y, std::span<const double> z);

struct TauRow {
    double beta = 0.0;
    double mu = 0.0;
    std::int32_t t = 0;
    std::string method;
    double tau = 0.0;
};

struct TauReport {
    std::vector<TauRow> rows;
    std::string dataset;
    std::int32_t runs_per_seed = 0;
};

/// One tau per centrality against the simulated mean influence. When the
/// influence estimate covers a seed subset, centralities are restricted to
/// the same subset.
std::vector<TauRow> evaluate_methods(
    const Graph& g, const InfluenceEstimate& influence,
    const std::vector<std::pair<std::string, ScoreVector>>& centralities,
    const SpreadParams& p);

} // namespace dscent
