#include "dscent/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dscent/error.hpp"

namespace dscent {

void SpreadParams::validate() const {
    if (!(beta > 0.0) || beta > 1.0)
        throw ConfigError("spreading rate beta must be in (0, 1]");
    if (mu < 0.0 || mu > 1.0)
        throw ConfigError("recovery rate mu must be in [0, 1]");
    if (horizon < 1) throw ConfigError("time horizon t must be >= 1");
}

const char* to_string(ScoreKind kind) {
    switch (kind) {
        case ScoreKind::degree: return "degree";
        case ScoreKind::kshell: return "kshell";
        case ScoreKind::eigenvector: return "eigenvector";
        case ScoreKind::ds: return "ds";
        case ScoreKind::influence: return "influence";
        case ScoreKind::probability: return "probability";
    }
    return "unknown";
}

ScoreVector degree_centrality(const Graph& g) {
    const auto n = g.node_count();
    ScoreVector out;
    out.kind = ScoreKind::degree;
    out.scores.resize(n);
    for (std::int32_t v = 0; v < n; ++v) out.scores[v] = static_cast<double>(g.degree(v));
    return out;
}

ScoreVector kshell_centrality(const Graph& g) {
    // Bucket peeling (Batagelj-Zaversnik): process nodes in ascending
    // residual degree; the shell index never decreases along the order.
    const auto n = g.node_count();
    std::vector<std::int32_t> deg(n), pos(n), vert(n), shell(n);
    const auto maxdeg = g.max_degree();
    std::vector<std::int32_t> bin(maxdeg + 2, 0);
    for (std::int32_t v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        ++bin[deg[v]];
    }
    std::int32_t start = 0;
    for (std::int32_t d = 0; d <= maxdeg; ++d) {
        const auto count = bin[d];
        bin[d] = start;
        start += count;
    }
    for (std::int32_t v = 0; v < n; ++v) {
        pos[v] = bin[deg[v]]++;
        vert[pos[v]] = v;
    }
    for (std::int32_t d = maxdeg; d > 0; --d) bin[d] = bin[d - 1];
    bin[0] = 0;

    for (std::int32_t i = 0; i < n; ++i) {
        const auto v = vert[i];
        shell[v] = deg[v];
        for (auto u : g.neighbors(v)) {
            if (deg[u] > deg[v]) {
                // swap u with the first node of its bucket, then shrink it
                const auto du = deg[u];
                const auto pu = pos[u];
                const auto pw = bin[du];
                const auto w = vert[pw];
                if (u != w) {
                    std::swap(vert[pu], vert[pw]);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                ++bin[du];
                --deg[u];
            }
        }
    }

    ScoreVector out;
    out.kind = ScoreKind::kshell;
    out.scores.assign(shell.begin(), shell.end());
    return out;
}

ScoreVector eigenvector_centrality(const Graph& g, double tol, std::int64_t max_iters) {
    auto spec = leading_eigenpair(g, tol, max_iters);
    ScoreVector out;
    out.kind = ScoreKind::eigenvector;
    out.scores = std::move(spec.eigenvectors.front());
    return out;
}

namespace {

/// Shared recurrence for S(t) and x(t): accumulate sum_{r<t} beta A H^r w0.
/// One A product per step; the beta*(Aw) term is reused for the H update so
/// the t = 1 result is exactly beta times an integer-valued A w0.
std::vector<double> accumulate_walks(const Graph& g, const SpreadParams& p,
                                     std::vector<double> w) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const double decay = 1.0 - p.mu;
    std::vector<double> total(n, 0.0), aw(n, 0.0);
    for (std::int32_t r = 0; r < p.horizon; ++r) {
        g.multiply(w, aw);
        for (std::size_t i = 0; i < n; ++i) {
            const double infected = p.beta * aw[i];
            total[i] += infected;
            w[i] = infected + decay * w[i];
        }
    }
    return total;
}

} // namespace

ScoreVector ds_centrality_iterative(const Graph& g, const SpreadParams& p) {
    p.validate();
    ScoreVector out;
    out.kind = ScoreKind::ds;
    out.scores = accumulate_walks(g, p, std::vector<double>(g.node_count(), 1.0));
    return out;
}

ScoreVector ds_centrality_closed_form(const Graph& g, const SpreadParams& p,
                                      double solver_tol, std::int64_t solver_max_iters) {
    p.validate();
    const double lambda1 = leading_eigenpair(g).lambda1();
    const double rho = p.beta * lambda1 + 1.0 - p.mu;
    if (p.mu <= 0.0 || rho >= 1.0) {
        std::ostringstream msg;
        msg << "closed form out of regime: requires beta/mu < 1/lambda1 = "
            << 1.0 / lambda1 << " (beta=" << p.beta << ", mu=" << p.mu
            << "); S(t) diverges as t grows";
        throw NumericError(msg.str());
    }

    // Stationary iteration y <- L + H y; converges since rho(H) = rho < 1.
    // The fixed point is within delta * rho / (1 - rho) of the iterate.
    const auto n = static_cast<std::size_t>(g.node_count());
    const double decay = 1.0 - p.mu;
    std::vector<double> y(n, 1.0), ay(n, 0.0);
    const double tail_factor = rho / (1.0 - rho);
    bool converged = false;
    for (std::int64_t iter = 0; iter < solver_max_iters && !converged; ++iter) {
        g.multiply(y, ay);
        double delta = 0.0;
        double scale = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double next = 1.0 + p.beta * ay[i] + decay * y[i];
            delta = std::max(delta, std::abs(next - y[i]));
            scale = std::max(scale, std::abs(next));
            y[i] = next;
        }
        converged = delta * tail_factor <= solver_tol * scale;
    }
    if (!converged)
        throw NumericError("stationary solver for (I-H)y = L did not converge");

    g.multiply(y, ay);
    ScoreVector out;
    out.kind = ScoreKind::ds;
    out.scores.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.scores[i] = p.beta * ay[i];
    return out;
}

double spectral_coefficient(double beta, double mu, std::int32_t horizon, double lambda_r) {
    const double bl = beta * lambda_r;
    // Degenerate mu = beta*lambda_r: analytic limit t * beta * lambda_r.
    if (mu == bl) return bl * static_cast<double>(horizon);
    const double rho = bl + 1.0 - mu;
    if (std::abs(mu - bl) <= 1e-6 * (1.0 + std::abs(mu) + std::abs(bl))) {
        // Near the degeneracy the 1 - rho^t form cancels badly; sum the
        // geometric series directly instead.
        double acc = 0.0, pw = 1.0;
        for (std::int32_t s = 0; s < horizon; ++s) {
            acc += pw;
            pw *= rho;
        }
        return bl * acc;
    }
    return bl * (1.0 - std::pow(rho, static_cast<double>(horizon))) / (mu - bl);
}

ScoreVector ds_centrality_spectral(const Graph& g, const SpectralData& spec,
                                   const SpreadParams& p) {
    p.validate();
    const auto n = g.node_count();
    if (spec.retained_count() != n)
        throw DataError("spectral DS needs the full spectrum (" + std::to_string(n) +
                        " eigenpairs, got " + std::to_string(spec.retained_count()) + ")");

    ScoreVector out;
    out.kind = ScoreKind::ds;
    out.scores.assign(n, 0.0);
    for (std::int32_t r = 0; r < n; ++r) {
        const auto& q = spec.eigenvectors[r];
        double colsum = 0.0;
        for (std::int32_t j = 0; j < n; ++j) colsum += q[j];
        const double weight =
            spectral_coefficient(p.beta, p.mu, p.horizon, spec.eigenvalues[r]) * colsum;
        for (std::int32_t i = 0; i < n; ++i) out.scores[i] += weight * q[i];
    }
    return out;
}

ScoreVector infection_probabilities(const Graph& g, std::int32_t seed, const SpreadParams& p) {
    p.validate();
    if (seed < 0 || seed >= g.node_count())
        throw DataError("seed index " + std::to_string(seed) + " out of range");
    std::vector<double> w(g.node_count(), 0.0);
    w[seed] = 1.0;
    ScoreVector out;
    out.kind = ScoreKind::probability;
    out.scores = accumulate_walks(g, p, std::move(w));
    return out;
}

double verify_recursion_identity(const Graph& g, const SpreadParams& p, std::int32_t seed) {
    p.validate();
    if (p.horizon < 2) throw ConfigError("recursion identity check needs t >= 2");
    if (seed < 0 || seed >= g.node_count())
        throw DataError("seed index " + std::to_string(seed) + " out of range");

    const auto n = static_cast<std::size_t>(g.node_count());
    const auto t = p.horizon;
    const double decay = 1.0 - p.mu;

    // Increment history: newly[s] = x(s) - x(s-1) = beta A H^{s-1} x(0) for
    // s >= 1, newly[0] = x(0). w tracks H^s x(0).
    std::vector<std::vector<double>> newly(t);
    newly[0].assign(n, 0.0);
    newly[0][seed] = 1.0;
    std::vector<double> w = newly[0], aw(n, 0.0);
    for (std::int32_t s = 1; s < t; ++s) {
        g.multiply(w, aw);
        newly[s].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            newly[s][i] = p.beta * aw[i];
            w[i] = newly[s][i] + decay * w[i];
        }
    }

    // (a) closed form: beta A H^{t-1} x(0).
    std::vector<double> closed(n, 0.0);
    g.multiply(w, aw);
    for (std::size_t i = 0; i < n; ++i) closed[i] = p.beta * aw[i];

    // (b) defining recursion: the step-t increment is beta A applied to the
    // still-infectious mass sum_{s} (1-mu)^{t-1-s} newly[s].
    std::vector<double> infectious(n, 0.0);
    double factor = 1.0;
    for (std::int32_t s = t - 1; s >= 0; --s) {
        for (std::size_t i = 0; i < n; ++i) infectious[i] += factor * newly[s][i];
        factor *= decay;
    }
    std::vector<double> recursed(n, 0.0);
    g.multiply(infectious, aw);
    for (std::size_t i = 0; i < n; ++i) recursed[i] = p.beta * aw[i];

    double deviation = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        deviation = std::max(deviation, std::abs(closed[i] - recursed[i]));
    return deviation;
}

} // namespace dscent
