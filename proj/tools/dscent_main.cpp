#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dscent/centrality.hpp"
#include "dscent/error.hpp"
#include "dscent/graph.hpp"
#include "dscent/rank.hpp"
#include "dscent/simulate.hpp"
#include "dscent/spectral.hpp"

using json = nlohmann::json;
using namespace dscent;

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string dataset_name(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw DataError("cannot write output file: " + out_path);
    out << content;
}

std::vector<double> parse_beta_grid(const std::string& grid) {
    double start = 0, stop = 0, step = 0;
    char sep1 = 0, sep2 = 0;
    std::istringstream in(grid);
    if (!(in >> start >> sep1 >> stop >> sep2 >> step) || sep1 != ':' || sep2 != ':' ||
        step <= 0)
        throw ConfigError("--beta-grid expects START:STOP:STEP with positive step");
    std::vector<double> grid_values;
    for (int i = 0;; ++i) {
        const double b = start + i * step;
        if (b > stop + step * 1e-9) break;
        grid_values.push_back(b);
    }
    if (grid_values.empty()) throw ConfigError("--beta-grid produced no points");
    return grid_values;
}

void check_betas(const std::vector<double>& betas) {
    for (double b : betas)
        if (!(b > 0.0) || b > 1.0)
            throw ConfigError("spreading rate beta must be in (0, 1], got " +
                              fmt("%.6g", b));
}

struct StatsArgs {
    std::string graph, out, format = "csv", manifest;
};

void warn_on_manifest_mismatch(const std::string& manifest_path, const std::string& name,
                               const GraphStats& stats) {
    std::ifstream in(manifest_path);
    if (!in) throw DataError("cannot open manifest: " + manifest_path);
    json manifest = json::parse(in);
    for (const auto& entry : manifest.at("datasets")) {
        if (entry.at("name") != name) continue;
        const auto& want = entry.contains("published") ? entry.at("published") : entry;
        if (want.at("n") != stats.n || want.at("e") != stats.e)
            std::cerr << "dscent: warning: " << name << " has n=" << stats.n
                      << " e=" << stats.e << " but the manifest expects n=" << want.at("n")
                      << " e=" << want.at("e") << "\n";
        if (std::abs(want.at("mean_degree").get<double>() - stats.mean_degree) > 1e-3 ||
            std::abs(want.at("inv_lambda1").get<double>() - stats.inv_lambda1) > 1e-3)
            std::cerr << "dscent: warning: " << name
                      << " statistics deviate from the manifest (mean_degree "
                      << fmt("%.3f", stats.mean_degree) << ", 1/lambda1 "
                      << fmt("%.3f", stats.inv_lambda1) << ")\n";
        if (entry.contains("original_snapshot") && !entry.at("original_snapshot").get<bool>())
            std::cerr << "dscent: note: " << name
                      << " is a stand-in snapshot (see the manifest provenance field)\n";
        return;
    }
    std::cerr << "dscent: warning: dataset '" << name << "' not found in manifest\n";
}

int cmd_stats(const StatsArgs& args) {
    const auto g = Graph::load_edge_list_file(args.graph);
    const auto stats = compute_stats(g, leading_eigenpair(g));
    const auto& rep = g.repairs();
    const auto name = dataset_name(args.graph);
    if (!args.manifest.empty()) warn_on_manifest_mismatch(args.manifest, name, stats);
    std::string body;
    if (args.format == "json") {
        json record = {
            {"dataset", name},
            {"n", stats.n},
            {"e", stats.e},
            {"mean_degree", std::stod(fmt("%.3f", stats.mean_degree))},
            {"inv_lambda1", std::stod(fmt("%.3f", stats.inv_lambda1))},
            {"self_loops_dropped", rep.self_loops_dropped},
            {"duplicate_edges_collapsed", rep.duplicate_edges_collapsed},
        };
        body = record.dump(2) + "\n";
    } else {
        body = "dataset,n,e,mean_degree,inv_lambda1,self_loops_dropped,"
               "duplicate_edges_collapsed\n";
        body += name + ',' + std::to_string(stats.n) + ',' + std::to_string(stats.e) + ',' +
                fmt("%.3f", stats.mean_degree) + ',' + fmt("%.3f", stats.inv_lambda1) + ',' +
                std::to_string(rep.self_loops_dropped) + ',' +
                std::to_string(rep.duplicate_edges_collapsed) + '\n';
    }
    write_output(body, args.out);
    return 0;
}

struct RankArgs {
    std::string graph, method, model = "sir", out, format = "csv";
    double beta = 0.0, mu = -1.0;
    std::int32_t t = 0;
};

int cmd_rank(const RankArgs& args) {
    const auto g = Graph::load_edge_list_file(args.graph);
    const double mu = args.mu >= 0.0 ? args.mu : (args.model == "si" ? 0.0 : 1.0);

    ScoreVector scores;
    if (args.method == "ds") {
        if (args.beta <= 0.0 || args.t < 1)
            throw ConfigError("method 'ds' needs --beta and --t");
        scores = ds_centrality_iterative(g, {args.beta, mu, args.t});
    } else {
        if (args.beta > 0.0 || args.t > 0)
            std::cerr << "dscent: warning: --beta/--t are ignored for method '"
                      << args.method << "'\n";
        if (args.method == "degree")
            scores = degree_centrality(g);
        else if (args.method == "kshell")
            scores = kshell_centrality(g);
        else if (args.method == "eigenvector")
            scores = eigenvector_centrality(g);
        else
            throw ConfigError("unknown method '" + args.method +
                              "' (expected degree|kshell|eigenvector|ds)");
    }

    std::vector<std::int32_t> order(g.node_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });

    std::string body;
    if (args.format == "json") {
        json rows = json::array();
        for (std::size_t pos = 0; pos < order.size(); ++pos)
            rows.push_back({{"label", g.label(order[pos])},
                            {"score", scores[order[pos]]},
                            {"rank", pos + 1}});
        body = rows.dump(2) + "\n";
    } else {
        body = "# ties: equal scores are ordered by ascending node index\n";
        body += "label,score,rank\n";
        for (std::size_t pos = 0; pos < order.size(); ++pos)
            body += g.label(order[pos]) + ',' + fmt("%.10g", scores[order[pos]]) + ',' +
                    std::to_string(pos + 1) + '\n';
    }
    write_output(body, args.out);
    return 0;
}

struct EvaluateArgs {
    std::string graph, model = "sir", grid, out, format = "csv";
    std::vector<double> betas;
    std::vector<std::string> methods = {"degree", "kshell", "eigenvector", "ds"};
    std::int32_t t = 5, runs = 1000, threads = 0, seed_sample = 0;
    std::uint64_t rng_seed = 12345;
};

int cmd_evaluate(const EvaluateArgs& args) {
    const auto g = Graph::load_edge_list_file(args.graph);
    const double mu = args.model == "si" ? 0.0 : 1.0;
    std::vector<double> betas = args.betas;
    if (!args.grid.empty()) betas = parse_beta_grid(args.grid);
    if (betas.empty()) betas = parse_beta_grid("0.01:0.10:0.01");
    check_betas(betas);
    if (args.runs < 1) throw ConfigError("--runs must be >= 1");
    for (const auto& m : args.methods)
        if (m != "degree" && m != "kshell" && m != "eigenvector" && m != "ds")
            throw ConfigError("unknown method '" + m + "'");

    std::vector<std::int32_t> seeds; // empty = all nodes
    if (args.seed_sample > 0 && args.seed_sample < g.node_count()) {
        // deterministic sample: partial Fisher-Yates keyed by the rng seed
        std::vector<std::int32_t> pool(g.node_count());
        std::iota(pool.begin(), pool.end(), 0);
        SplitMix64 rng(mix64(args.rng_seed ^ 0x5eed5a3bc0ffee11ULL));
        for (std::int32_t i = 0; i < args.seed_sample; ++i) {
            const auto j = i + static_cast<std::int32_t>(rng.next_below(pool.size() - i));
            std::swap(pool[i], pool[j]);
            seeds.push_back(pool[i]);
        }
        std::sort(seeds.begin(), seeds.end());
    }

    // beta-independent centralities are computed once
    std::vector<std::pair<std::string, ScoreVector>> fixed;
    for (const auto& m : args.methods) {
        if (m == "degree") fixed.emplace_back(m, degree_centrality(g));
        if (m == "kshell") fixed.emplace_back(m, kshell_centrality(g));
        if (m == "eigenvector") fixed.emplace_back(m, eigenvector_centrality(g));
    }

    const auto name = dataset_name(args.graph);
    std::vector<TauRow> rows;
    for (double beta : betas) {
        const SpreadParams p{beta, mu, args.t};
        SimConfig cfg;
        cfg.params = p;
        cfg.runs_per_seed = args.runs;
        cfg.rng_seed = args.rng_seed;
        cfg.seeds = seeds;
        cfg.threads = args.threads;
        InfluenceEstimate influence;
        try {
            influence = estimate_influence(g, cfg);
        } catch (const Error& e) {
            throw Error("evaluate at beta=" + fmt("%.6g", beta) + ": " + e.what(),
                        e.exit_code());
        }

        std::vector<std::pair<std::string, ScoreVector>> named;
        for (const auto& m : args.methods) {
            if (m == "ds") {
                try {
                    named.emplace_back(m, ds_centrality_iterative(g, p));
                } catch (const Error& e) {
                    throw Error("evaluate at beta=" + fmt("%.6g", beta) + ", method=ds: " +
                                    e.what(),
                                e.exit_code());
                }
            } else {
                for (const auto& [fname, fscores] : fixed)
                    if (fname == m) named.emplace_back(fname, fscores);
            }
        }
        auto batch = evaluate_methods(g, influence, named, p);
        rows.insert(rows.end(), batch.begin(), batch.end());

        double mean_infl = 0.0, mean_se = 0.0;
        for (std::size_t i = 0; i < influence.mean_influence.scores.size(); ++i) {
            mean_infl += influence.mean_influence.scores[i];
            mean_se += influence.std_error[i];
        }
        mean_infl /= static_cast<double>(influence.mean_influence.scores.size());
        mean_se /= static_cast<double>(influence.std_error.size());
        std::cerr << "# beta=" << fmt("%.6g", beta) << " seeds="
                  << influence.seeds.size() << " mean_influence=" << fmt("%.6g", mean_infl)
                  << " mean_std_error=" << fmt("%.6g", mean_se) << "\n";
    }

    std::string body;
    if (args.format == "json") {
        json out = json::array();
        for (const auto& r : rows)
            out.push_back({{"dataset", name},
                           {"model", args.model},
                           {"beta", std::stod(fmt("%.6g", r.beta))},
                           {"mu", std::stod(fmt("%.6g", r.mu))},
                           {"t", r.t},
                           {"runs_per_seed", args.runs},
                           {"method", r.method},
                           {"tau", std::stod(fmt("%.6g", r.tau))}});
        body = out.dump(2) + "\n";
    } else {
        body = "dataset,model,beta,mu,t,runs_per_seed,method,tau\n";
        for (const auto& r : rows)
            body += name + ',' + args.model + ',' + fmt("%.6g", r.beta) + ',' +
                    fmt("%.6g", r.mu) + ',' + std::to_string(r.t) + ',' +
                    std::to_string(args.runs) + ',' + r.method + ',' + fmt("%.6g", r.tau) +
                    '\n';
    }
    write_output(body, args.out);
    return 0;
}

struct VerifyArgs {
    std::string graph;
    double beta = 0.0, mu = 1.0;
    std::int32_t t = 4, seed = 0, cap = 2000;
};

int cmd_verify(const VerifyArgs& args) {
    const auto g = Graph::load_edge_list_file(args.graph);
    const SpreadParams p{args.beta, args.mu, args.t};
    p.validate();
    bool ok = true;

    const double recursion_dev = verify_recursion_identity(g, p, args.seed);
    const bool recursion_ok = recursion_dev <= 1e-10;
    ok = ok && recursion_ok;
    std::cout << "recursion-identity max deviation: " << fmt("%.3e", recursion_dev)
              << (recursion_ok ? "  [pass]" : "  [FAIL]") << "\n";

    const auto spec = full_spectrum(g, args.cap);
    const auto iterative = ds_centrality_iterative(g, p);
    const auto spectral = ds_centrality_spectral(g, spec, p);
    double gap = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < iterative.size(); ++i) {
        gap = std::max(gap, std::abs(iterative[i] - spectral[i]));
        scale = std::max(scale, std::abs(iterative[i]));
    }
    const double rel = scale > 0.0 ? gap / scale : gap;
    const bool spectral_ok = rel <= 1e-8;
    ok = ok && spectral_ok;
    std::cout << "iterative-vs-spectral relative deviation: " << fmt("%.3e", rel)
              << (spectral_ok ? "  [pass]" : "  [FAIL]") << "\n";

    const double lambda1 = spec.lambda1();
    const double rho = args.beta * lambda1 + 1.0 - args.mu;
    if (args.mu > 0.0 && rho < 1.0) {
        const auto t_limit = static_cast<std::int32_t>(
            std::min(1e6, std::ceil(std::log(1e-8) / std::log(rho))) + 1);
        const auto limit = ds_centrality_closed_form(g, {args.beta, args.mu, 1});
        const auto late = ds_centrality_iterative(g, {args.beta, args.mu, t_limit});
        double cgap = 0.0, cscale = 0.0;
        for (std::size_t i = 0; i < late.size(); ++i) {
            cgap = std::max(cgap, std::abs(late[i] - limit.scores[i]));
            cscale = std::max(cscale, std::abs(limit.scores[i]));
        }
        const double crel = cscale > 0.0 ? cgap / cscale : cgap;
        const bool closed_ok = crel <= 1e-6;
        ok = ok && closed_ok;
        std::cout << "iterative-vs-closed-form relative gap: " << fmt("%.3e", crel)
                  << " (t=" << t_limit << ")" << (closed_ok ? "  [pass]" : "  [FAIL]")
                  << "\n";
    } else {
        std::cout << "iterative-vs-closed-form: skipped (out of regime: beta/mu >= "
                  << "1/lambda1 = " << fmt("%.6g", 1.0 / lambda1) << ")\n";
    }

    std::cout << (ok ? "verify: PASS" : "verify: FAIL") << "\n";
    if (!ok) throw NumericError("verification tolerances exceeded");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamics-sensitive centrality toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags take precedence");

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "basic statistics of an edge-list graph");
    stats->add_option("--graph", stats_args.graph, "edge list file")->required();
    stats->add_option("--out", stats_args.out, "output path (default stdout)");
    stats->add_option("--format", stats_args.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    RankArgs rank_args;
    auto* rank = app.add_subcommand("rank", "rank nodes by a centrality");
    rank->add_option("--graph", rank_args.graph, "edge list file")->required();
    rank->add_option("--method", rank_args.method, "degree|kshell|eigenvector|ds")
        ->required();
    rank->add_option("--model", rank_args.model, "sir|si (sets mu = 1 or 0)")
        ->check(CLI::IsMember({"sir", "si"}));
    rank->add_option("--beta", rank_args.beta, "spreading rate (ds only)");
    rank->add_option("--mu", rank_args.mu, "recovery rate override");
    rank->add_option("--t", rank_args.t, "time horizon (ds only)");
    rank->add_option("--out", rank_args.out, "output path (default stdout)");
    rank->add_option("--format", rank_args.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    EvaluateArgs eval_args;
    auto* evaluate = app.add_subcommand(
        "evaluate", "simulate spreading and score centralities with Kendall's tau");
    evaluate->add_option("--graph", eval_args.graph, "edge list file")->required();
    evaluate->add_option("--model", eval_args.model, "sir (mu=1) | si (mu=0)")
        ->check(CLI::IsMember({"sir", "si"}));
    auto* beta_opt =
        evaluate->add_option("--beta", eval_args.betas, "explicit beta value (repeatable)");
    evaluate->add_option("--beta-grid", eval_args.grid, "START:STOP:STEP inclusive grid")
        ->excludes(beta_opt);
    evaluate->add_option("--t", eval_args.t, "time horizon")->check(CLI::PositiveNumber);
    evaluate->add_option("--runs", eval_args.runs, "independent runs per seed node");
    evaluate->add_option("--rng-seed", eval_args.rng_seed, "base RNG seed");
    evaluate->add_option("--method", eval_args.methods, "comma-separated method list")
        ->delimiter(',');
    evaluate->add_option("--threads", eval_args.threads, "worker threads (0 = hardware)");
    evaluate->add_option("--seed-sample", eval_args.seed_sample,
                         "simulate only N sampled seed nodes (0 = all)");
    evaluate->add_option("--out", eval_args.out, "output path (default stdout)");
    evaluate->add_option("--format", eval_args.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand(
        "verify", "cross-check the closed forms against each other on a small graph");
    verify->add_option("--graph", verify_args.graph, "edge list file")->required();
    verify->add_option("--beta", verify_args.beta, "spreading rate")->required();
    verify->add_option("--mu", verify_args.mu, "recovery rate");
    verify->add_option("--t", verify_args.t, "time horizon (>= 2)");
    verify->add_option("--seed", verify_args.seed, "seed node index");
    verify->add_option("--cap", verify_args.cap, "dense spectrum size cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (stats->parsed()) return cmd_stats(stats_args);
        if (rank->parsed()) return cmd_rank(rank_args);
        if (evaluate->parsed()) return cmd_evaluate(eval_args);
        if (verify->parsed()) return cmd_verify(verify_args);
    } catch (const Error& e) {
        std::cerr << "dscent: error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "dscent: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
