#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dscent/graph.hpp"
#include "dscent/spectral.hpp"

namespace dscent {

/// Spreading parameters: per-contact infection probability beta in (0,1],
/// per-step recovery probability mu in [0,1] (1 = SIR as used here, 0 = SI),
/// and the time horizon t >= 1.
struct SpreadParams {
    double beta = 0.0;
    double mu = 1.0;
    std::int32_t horizon = 1;

    /// Throws ConfigError when outside the valid ranges (beta = 0 is
    /// rejected: all scores vanish and rank correlations are undefined).
    void validate() const;
};

enum class ScoreKind { degree, kshell, eigenvector, ds, influence, probability };

const char* to_string(ScoreKind kind);

/// One real score per node, dense-index aligned with the graph.
struct ScoreVector {
    std::vector<double> scores;
    ScoreKind kind = ScoreKind::degree;

    std::size_t size() const { return scores.size(); }
    double operator[](std::size_t i) const { return scores[i]; }
};

/// scores[i] = |neighbors(i)|.
ScoreVector degree_centrality(const Graph& g);

/// k-shell index by iterative peeling: all nodes of residual degree <= k
/// are removed (cascading within the shell) before k increments; nodes of
/// degree 0 get shell 0.
ScoreVector kshell_centrality(const Graph& g);

/// Leading eigenvector of A, unit-norm and entrywise nonnegative.
ScoreVector eigenvector_centrality(const Graph& g, double tol = 1e-10,
                                   std::int64_t max_iters = 100000);

/// Dynamics-sensitive centrality S(t) = sum_{r=0}^{t-1} beta A H^r L with
/// H = beta A + (1-mu) I, evaluated with exactly t sparse matrix-vector
/// products and O(n) extra space. Entries are cumulative and may exceed 1.
ScoreVector ds_centrality_iterative(const Graph& g, const SpreadParams& p);

/// t -> infinity limit beta A (I-H)^{-1} L, valid when mu > 0 and
/// beta*lambda1 + 1 - mu < 1. The linear system is solved by the stationary
/// iteration y <- L + H y, whose convergence the precondition guarantees.
/// Throws NumericError out of regime (naming the 1/lambda1 threshold) or on
/// non-convergence.
ScoreVector ds_centrality_closed_form(const Graph& g, const SpreadParams& p,
                                      double solver_tol = 1e-12,
                                      std::int64_t solver_max_iters = 2000000);

/// Coefficient m_r = beta*lambda_r * [1 - (beta*lambda_r + 1 - mu)^t]
/// / (mu - beta*lambda_r); the degenerate case mu = beta*lambda_r is its
/// limit t * beta * lambda_r.
double spectral_coefficient(double beta, double mu, std::int32_t horizon, double lambda_r);

/// S(t) assembled from the full spectrum: S_i = sum_r m_r q_ri (sum_j q_rj).
/// Requires spec to retain all n eigenpairs.
ScoreVector ds_centrality_spectral(const Graph& g, const SpectralData& spec,
                                   const SpreadParams& p);

/// x(t) = sum_{r=0}^{t-1} beta A H^r e_seed: cumulative probabilities of
/// nodes being infected no later than t when `seed` starts infected. The
/// seed's own initial unit term is not part of the sum.
ScoreVector infection_probabilities(const Graph& g, std::int32_t seed,
                                    const SpreadParams& p);

/// Consistency check of the infection-increment recursion: computes
/// x(t)-x(t-1) (a) as beta A H^{t-1} x(0) and (b) from the increment
/// history as beta A sum_{s=0}^{t-1} (1-mu)^{t-1-s} [x(s)-x(s-1)], and
/// returns the max absolute entrywise deviation. Requires t >= 2; exactly
/// zero for mu = 1.
double verify_recursion_identity(const Graph& g, const SpreadParams& p,
                                 std::int32_t seed);

} // namespace dscent
