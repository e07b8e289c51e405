#include "dscent/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "dscent/error.hpp"

namespace dscent {

namespace {

double norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

} // namespace

SpectralData leading_eigenpair(const Graph& g, double tol, std::int64_t max_iters) {
    if (tol <= 0.0) throw ConfigError("spectral tolerance must be positive");
    if (g.edge_count() == 0)
        throw NumericError("degenerate spectrum: graph has no edges");

    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> av(n, 0.0);

    double lambda = 0.0;
    double residual = 0.0;
    for (std::int64_t iter = 0; iter < max_iters; ++iter) {
        g.multiply(v, av);
        lambda = 0.0; // Rayleigh quotient, v is unit norm
        for (std::size_t i = 0; i < n; ++i) lambda += v[i] * av[i];
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            residual = std::max(residual, std::abs(av[i] - lambda * v[i]));
        if (residual <= tol) {
            SpectralData spec;
            spec.eigenvalues.push_back(lambda);
            spec.eigenvectors.push_back(std::move(v));
            return spec;
        }
        // Shifted step v <- normalize((A + I) v); iterates stay nonnegative.
        for (std::size_t i = 0; i < n; ++i) av[i] += v[i];
        const double nrm = norm2(av);
        for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / nrm;
    }
    std::ostringstream msg;
    msg << "power iteration did not converge in " << max_iters
        << " iterations (last residual " << residual << ")";
    throw NumericError(msg.str());
}

SpectralData full_spectrum(const Graph& g, std::int32_t size_cap) {
    const auto n = g.node_count();
    if (n > size_cap)
        throw DataError("graph has " + std::to_string(n) + " nodes, above the dense cap of " +
                        std::to_string(size_cap) + "; use the iterative forms instead");

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::int32_t v = 0; v < n; ++v)
        for (auto w : g.neighbors(v)) a(v, w) = 1.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success)
        throw NumericError("dense eigendecomposition failed");

    SpectralData spec;
    spec.eigenvalues.resize(n);
    spec.eigenvectors.assign(n, std::vector<double>(n));
    for (std::int32_t r = 0; r < n; ++r) {
        const auto src = n - 1 - r; // Eigen returns ascending order
        spec.eigenvalues[r] = solver.eigenvalues()(src);
        for (std::int32_t i = 0; i < n; ++i)
            spec.eigenvectors[r][i] = solver.eigenvectors()(i, src);
    }

    // Sign-normalize q1 so its dominant entry is nonnegative.
    auto& q1 = spec.eigenvectors.front();
    const auto peak = std::max_element(q1.begin(), q1.end(), [](double a_, double b_) {
        return std::abs(a_) < std::abs(b_);
    });
    if (*peak < 0.0)
        for (double& x : q1) x = -x;
    return spec;
}

double eigenpair_residual(const Graph& g, const SpectralData& spec, std::int32_t r) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const auto& q = spec.eigenvectors[r];
    const double lambda = spec.eigenvalues[r];
    std::vector<double> aq(n, 0.0);
    g.multiply(q, aq);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        residual = std::max(residual, std::abs(aq[i] - lambda * q[i]));
    return residual;
}

GraphStats compute_stats(const Graph& g, const SpectralData& spec) {
    if (spec.retained_count() < 1)
        throw DataError("spectral data retains no eigenpairs");
    const double lambda1 = spec.lambda1();
    if (lambda1 <= 0.0)
        throw NumericError("degenerate spectrum: lambda1 <= 0");
    GraphStats s;
    s.n = g.node_count();
    s.e = g.edge_count();
    s.mean_degree = g.mean_degree();
    s.inv_lambda1 = 1.0 / lambda1;
    return s;
}

} // namespace dscent
