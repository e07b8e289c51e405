#pragma once

#include <cstdint>
#include <vector>

#include "dscent/graph.hpp"

namespace dscent {

/// Eigenpairs of the adjacency matrix, eigenvalues descending, eigenvectors
/// unit-norm. The leading eigenvector is sign-normalized to be entrywise
/// nonnegative. Immutable after construction.
struct SpectralData {
    std::vector<double> eigenvalues;               // descending
    std::vector<std::vector<double>> eigenvectors; // eigenvectors[r][node]

    std::int32_t retained_count() const {
        return static_cast<std::int32_t>(eigenvalues.size());
    }
    double lambda1() const { return eigenvalues.front(); }
    const std::vector<double>& q1() const { return eigenvectors.front(); }
};

struct GraphStats {
    std::int32_t n = 0;
    std::int64_t e = 0;
    double mean_degree = 0.0;
    double inv_lambda1 = 0.0;
};

/// Leading eigenpair by power iteration on A + I (the shift keeps bipartite
/// spectra from oscillating), started from the all-ones vector and stopped
/// on the Rayleigh-quotient residual ||A q - lambda q||_inf <= tol.
/// Deterministic. Throws NumericError when the graph has no edges or the
/// iteration does not converge within max_iters.
SpectralData leading_eigenpair(const Graph& g, double tol = 1e-10,
                               std::int64_t max_iters = 100000);

/// Full dense eigendecomposition; guarded by a size cap (default 2000).
/// Throws DataError above the cap.
SpectralData full_spectrum(const Graph& g, std::int32_t size_cap = 2000);

/// ||A q_r - lambda_r q_r||_inf for eigenpair r of spec.
double eigenpair_residual(const Graph& g, const SpectralData& spec, std::int32_t r);

/// n, e, mean degree 2e/n and 1/lambda1. Throws NumericError when
/// lambda1 <= 0 (edgeless graph).
GraphStats compute_stats(const Graph& g, const SpectralData& spec);

} // namespace dscent
