#include "dscent/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <thread>
#include <unordered_map>

#include "dscent/error.hpp"

namespace dscent {

namespace {

struct RunScratch {
    // status: 0 susceptible, 1 infectious, 2 recovered, 3 infected this step
    std::vector<std::uint8_t> status;
    std::vector<std::int32_t> frontier;
    std::vector<std::int32_t> fresh;
    std::vector<std::int32_t> touched;

    explicit RunScratch(std::int32_t n) : status(n, 0) {}
};

std::int32_t run_single_with(const Graph& g, std::int32_t seed, const SpreadParams& p,
                             SplitMix64& rng, RunScratch& ws) {
    ws.frontier.clear();
    ws.touched.clear();

    ws.status[seed] = 1;
    ws.frontier.push_back(seed);
    ws.touched.push_back(seed);
    std::int32_t ever = 1;

    for (std::int32_t step = 0; step < p.horizon && !ws.frontier.empty(); ++step) {
        ws.fresh.clear();
        for (auto u : ws.frontier) {
            for (auto v : g.neighbors(u)) {
                if (ws.status[v] == 0 && rng.bernoulli(p.beta)) {
                    ws.status[v] = 3;
                    ws.fresh.push_back(v);
                    ws.touched.push_back(v);
                    ++ever;
                }
            }
        }
        // Recovery applies to the snapshot that was infectious this step.
        std::size_t keep = 0;
        for (auto u : ws.frontier) {
            if (rng.bernoulli(p.mu))
                ws.status[u] = 2;
            else
                ws.frontier[keep++] = u;
        }
        ws.frontier.resize(keep);
        for (auto v : ws.fresh) {
            ws.status[v] = 1;
            ws.frontier.push_back(v);
        }
    }

    for (auto v : ws.touched) ws.status[v] = 0;
    return ever;
}

} // namespace

std::int32_t run_single(const Graph& g, std::int32_t seed, const SpreadParams& p,
                        SplitMix64& rng) {
    p.validate();
    if (seed < 0 || seed >= g.node_count())
        throw DataError("seed index " + std::to_string(seed) + " out of range");
    RunScratch ws(g.node_count());
    return run_single_with(g, seed, p, rng, ws);
}

InfluenceEstimate estimate_influence(const Graph& g, const SimConfig& cfg) {
    cfg.params.validate();
    if (cfg.runs_per_seed < 1) throw ConfigError("runs_per_seed must be >= 1");

    std::vector<std::int32_t> seeds = cfg.seeds;
    if (seeds.empty()) {
        seeds.resize(g.node_count());
        for (std::int32_t v = 0; v < g.node_count(); ++v) seeds[v] = v;
    }
    for (auto s : seeds)
        if (s < 0 || s >= g.node_count())
            throw DataError("simulation seed " + std::to_string(s) + " out of range");

    const auto seed_count = seeds.size();
    std::vector<std::int64_t> sums(seed_count, 0), sq_sums(seed_count, 0);

    const auto runs = cfg.runs_per_seed;
    auto worker_count = cfg.threads > 0
                            ? static_cast<unsigned>(cfg.threads)
                            : std::max(1u, std::thread::hardware_concurrency());
    worker_count = std::min<unsigned>(worker_count, static_cast<unsigned>(seed_count));

    // Runs for one seed stay on one worker and execute in run-index order;
    // each run has its own stream, so the partition of seeds over workers
    // cannot change any estimate.
    std::atomic<std::size_t> next_seed{0};
    auto work = [&]() {
        RunScratch ws(g.node_count());
        for (;;) {
            const auto idx = next_seed.fetch_add(1);
            if (idx >= seed_count) break;
            const auto seed_node = seeds[idx];
            std::int64_t sum = 0, sq = 0;
            for (std::int32_t run = 0; run < runs; ++run) {
                SplitMix64 rng(run_stream_key(cfg.rng_seed,
                                              static_cast<std::uint64_t>(seed_node),
                                              static_cast<std::uint64_t>(run)));
                const std::int64_t x = run_single_with(g, seed_node, cfg.params, rng, ws);
                sum += x;
                sq += x * x;
            }
            sums[idx] = sum;
            sq_sums[idx] = sq;
        }
    };

    if (worker_count <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (unsigned i = 0; i < worker_count; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    InfluenceEstimate est;
    est.runs = runs;
    est.seeds = std::move(seeds);
    est.mean_influence.kind = ScoreKind::influence;
    est.mean_influence.scores.resize(seed_count);
    est.std_error.resize(seed_count);
    for (std::size_t i = 0; i < seed_count; ++i) {
        const double mean = static_cast<double>(sums[i]) / runs;
        est.mean_influence.scores[i] = mean;
        if (runs > 1) {
            const double var =
                (static_cast<double>(sq_sums[i]) - static_cast<double>(sums[i]) * mean) /
                (runs - 1);
            est.std_error[i] = std::sqrt(std::max(0.0, var) / runs);
        } else {
            est.std_error[i] = 0.0;
        }
    }
    return est;
}

double exact_influence_small(const Graph& g, std::int32_t seed, const SpreadParams& p) {
    p.validate();
    const auto n = g.node_count();
    if (n > 8 || p.horizon > 4)
        throw DataError("exact influence oracle is guarded to n <= 8, t <= 4");
    if (seed < 0 || seed >= n)
        throw DataError("seed index " + std::to_string(seed) + " out of range");

    // State: (ever-infected mask, currently-infectious mask) -> probability.
    // Per step, susceptible j is infected independently with
    // p_j = 1 - (1-beta)^{m_j}; each infectious node recovers with mu.
    using StateMap = std::unordered_map<std::uint32_t, double>;
    auto key = [](std::uint32_t ever, std::uint32_t inf) { return ever << 8 | inf; };

    StateMap current;
    current[key(1u << seed, 1u << seed)] = 1.0;

    std::vector<std::int32_t> candidates;
    std::vector<double> p_infect;
    for (std::int32_t step = 0; step < p.horizon; ++step) {
        StateMap next;
        for (const auto& [packed, prob] : current) {
            const std::uint32_t ever = packed >> 8;
            const std::uint32_t inf = packed & 0xffu;
            if (inf == 0) {
                next[packed] += prob;
                continue;
            }
            candidates.clear();
            p_infect.clear();
            for (std::int32_t j = 0; j < n; ++j) {
                if (ever & (1u << j)) continue;
                std::int32_t contacts = 0;
                for (auto u : g.neighbors(j))
                    if (inf & (1u << u)) ++contacts;
                if (contacts > 0) {
                    candidates.push_back(j);
                    p_infect.push_back(1.0 - std::pow(1.0 - p.beta, contacts));
                }
            }
            const auto cand_count = candidates.size();
            for (std::uint32_t pick = 0; pick < (1u << cand_count); ++pick) {
                double prob_new = prob;
                std::uint32_t fresh = 0;
                for (std::size_t c = 0; c < cand_count; ++c) {
                    if (pick & (1u << c)) {
                        prob_new *= p_infect[c];
                        fresh |= 1u << candidates[c];
                    } else {
                        prob_new *= 1.0 - p_infect[c];
                    }
                }
                if (prob_new == 0.0) continue;
                // enumerate recoveries over the infectious snapshot
                std::vector<std::int32_t> inf_nodes;
                for (std::int32_t u = 0; u < n; ++u)
                    if (inf & (1u << u)) inf_nodes.push_back(u);
                for (std::uint32_t rec = 0; rec < (1u << inf_nodes.size()); ++rec) {
                    double prob_rec = prob_new;
                    std::uint32_t remaining = inf;
                    for (std::size_t c = 0; c < inf_nodes.size(); ++c) {
                        if (rec & (1u << c)) {
                            prob_rec *= p.mu;
                            remaining &= ~(1u << inf_nodes[c]);
                        } else {
                            prob_rec *= 1.0 - p.mu;
                        }
                    }
                    if (prob_rec == 0.0) continue;
                    next[key(ever | fresh, remaining | fresh)] += prob_rec;
                }
            }
        }
        current = std::move(next);
    }

    double expected = 0.0;
    for (const auto& [packed, prob] : current)
        expected += prob * std::popcount(packed >> 8);
    return expected;
}

} // namespace dscent
