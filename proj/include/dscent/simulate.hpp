#pragma once

#include <cstdint>
#include <vector>

#include "dscent/centrality.hpp"
#include "dscent/graph.hpp"
#include "dscent/rng.hpp"

namespace dscent {

/// Monte Carlo configuration. `seeds` empty means all nodes. `threads` 0
/// means hardware concurrency.
struct SimConfig {
    SpreadParams params;
    std::int32_t runs_per_seed = 1;
    std::uint64_t rng_seed = 0;
    std::vector<std::int32_t> seeds;
    std::int32_t threads = 0;
};

/// Per-seed spreading influence estimates. mean_influence is aligned with
/// `seeds` (kind = influence); when seeds covers all nodes it is a full
/// per-node vector.
struct InfluenceEstimate {
    ScoreVector mean_influence;
    std::vector<double> std_error;
    std::int32_t runs = 0;
    std::vector<std::int32_t> seeds;
};

/// One synchronous SIR/SI realization over exactly t steps. Per step, every
/// node infectious at the step's start contacts each susceptible neighbor
/// independently with probability beta (nodes infected this step become
/// infectious next step); afterwards each member of that same snapshot
/// recovers with probability mu. Returns the ever-infected count at t,
/// seed included.
std::int32_t run_single(const Graph& g, std::int32_t seed, const SpreadParams& p,
                        SplitMix64& rng);

/// Averages run_single over runs_per_seed independent runs per seed. Each
/// run draws from its own stream keyed by (rng_seed, seed node, run index),
/// so estimates are bit-identical across thread counts and execution orders.
InfluenceEstimate estimate_influence(const Graph& g, const SimConfig& cfg);

/// Exact expected ever-infected count by exhaustive enumeration of the
/// outcome distribution; brute-force oracle for tests. Guarded to n <= 8,
/// t <= 4 (throws DataError beyond).
double exact_influence_small(const Graph& g, std::int32_t seed, const SpreadParams& p);

} // namespace dscent
