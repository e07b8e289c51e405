#include "dscent/rank.hpp"

#include <algorithm>
#include <numeric>

#include "dscent/error.hpp"

namespace dscent {

namespace {

/// Counts strict inversions of `vals` while merge-sorting it.
std::int64_t merge_count(std::vector<double>& vals, std::vector<double>& buf,
                         std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const auto mid = lo + (hi - lo) / 2;
    std::int64_t inv = merge_count(vals, buf, lo, mid) + merge_count(vals, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (vals[j] < vals[i]) {
            inv += static_cast<std::int64_t>(mid - i);
            buf[k++] = vals[j++];
        } else {
            buf[k++] = vals[i++];
        }
    }
    while (i < mid) buf[k++] = vals[i++];
    while (j < hi) buf[k++] = vals[j++];
    std::copy(buf.begin() + lo, buf.begin() + hi, vals.begin() + lo);
    return inv;
}

std::int64_t tie_pairs(const std::vector<double>& sorted) {
    std::int64_t pairs = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const auto run = static_cast<std::int64_t>(j - i);
        pairs += run * (run - 1) / 2;
        i = j;
    }
    return pairs;
}

} // namespace

double kendall_tau(std::span<const double> y, std::span<const double> z) {
    if (y.size() != z.size())
        throw DataError("kendall_tau: length mismatch");
    const auto n = y.size();
    if (n < 2) throw DataError("kendall_tau: need at least two entries");

    // Knight's method: sort by (y, z), count discordant pairs as strict
    // inversions of z, and correct for ties so that tied pairs contribute 0
    // exactly as in the pairwise sgn sum.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (y[a] != y[b]) return y[a] < y[b];
        return z[a] < z[b];
    });

    std::int64_t ties_y = 0, ties_both = 0;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j < n && y[order[j]] == y[order[i]]) ++j;
            const auto run = static_cast<std::int64_t>(j - i);
            ties_y += run * (run - 1) / 2;
            std::size_t a = i;
            while (a < j) {
                std::size_t b = a;
                while (b < j && z[order[b]] == z[order[a]]) ++b;
                const auto zrun = static_cast<std::int64_t>(b - a);
                ties_both += zrun * (zrun - 1) / 2;
                a = b;
            }
            i = j;
        }
    }

    std::vector<double> zs(n), buf(n);
    for (std::size_t i = 0; i < n; ++i) zs[i] = z[order[i]];
    const std::int64_t discordant = merge_count(zs, buf, 0, n); // zs is sorted now
    const std::int64_t ties_z = tie_pairs(zs);

    const std::int64_t total = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
    const std::int64_t sgn_sum = total - ties_y - ties_z + ties_both - 2 * discordant;
    return static_cast<double>(sgn_sum) / static_cast<double>(total);
}

std::vector<TauRow> evaluate_methods(
    const Graph& g, const InfluenceEstimate& influence,
    const std::vector<std::pair<std::string, ScoreVector>>& centralities,
    const SpreadParams& p) {
    const auto& seeds = influence.seeds;
    const auto& means = influence.mean_influence.scores;
    if (seeds.size() != means.size())
        throw DataError("influence estimate is inconsistent with its seed list");

    std::vector<TauRow> rows;
    rows.reserve(centralities.size());
    std::vector<double> subset(seeds.size());
    for (const auto& [name, scores] : centralities) {
        if (scores.size() != static_cast<std::size_t>(g.node_count()))
            throw DataError("centrality '" + name + "' length does not match the graph");
        for (std::size_t i = 0; i < seeds.size(); ++i)
            subset[i] = scores[static_cast<std::size_t>(seeds[i])];
        TauRow row;
        row.beta = p.beta;
        row.mu = p.mu;
        row.t = p.horizon;
        row.method = name;
        row.tau = kendall_tau(means, subset);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace dscent
