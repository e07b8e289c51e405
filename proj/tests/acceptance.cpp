// Acceptance suite: runs every acceptance criterion end to end against the
// CLI binary and the bundled datasets, printing one pass/fail line per
// criterion. Usage: acceptance CLI_PATH DATA_DIR [SCRATCH_DIR]

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dscent/centrality.hpp"
#include "dscent/error.hpp"
#include "dscent/graph.hpp"
#include "dscent/rank.hpp"
#include "dscent/rng.hpp"
#include "dscent/simulate.hpp"
#include "dscent/spectral.hpp"
#include "test_util.hpp"

using namespace dscent;

namespace {

std::string g_cli, g_data, g_scratch;
constexpr std::uint64_t kRngSeed = 20250810;

int run_cli(const std::string& args) {
    const std::string cmd = '"' + g_cli + "\" " + args + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

struct TauTable {
    // (beta, method) -> tau
    std::map<std::pair<double, std::string>, double> taus;
    double get(double beta, const std::string& method) const {
        return taus.at({beta, method});
    }
};

TauTable read_tau_csv(const std::string& path) {
    TauTable table;
    for (const auto& row : read_csv(path)) {
        if (row.size() != 8 || row[0] == "dataset") continue;
        table.taus[{std::stod(row[2]), row[6]}] = std::stod(row[7]);
    }
    return table;
}

bool check(bool ok, const std::string& detail) {
    std::printf("    %s %s\n", ok ? "ok  " : "FAIL", detail.c_str());
    return ok;
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---- criterion 1: dataset statistics --------------------------------------

struct TableRow {
    const char* name;
    long long n, e;
    double mean_degree, inv_lambda1;
};
constexpr TableRow kTable[] = {
    {"email", 1133, 5451, 9.622, 0.048},
    {"protein", 2783, 6007, 4.317, 0.063},
    {"erdos", 456, 1314, 5.763, 0.079},
    {"router", 2114, 6632, 6.274, 0.036},
};

bool criterion1() {
    bool ok = true;
    for (const auto& want : kTable) {
        const std::string out = g_scratch + "/stats_" + want.name + ".csv";
        const std::string graph = g_data + "/" + want.name + ".edges";
        if (run_cli("stats --graph \"" + graph + "\" --out \"" + out + "\"") != 0) {
            ok = check(false, std::string(want.name) + ": stats exited nonzero");
            continue;
        }
        const auto rows = read_csv(out);
        if (rows.size() != 2 || rows[1].size() != 7) {
            ok = check(false, std::string(want.name) + ": malformed stats csv");
            continue;
        }
        const auto& r = rows[1];
        const bool match = std::stoll(r[1]) == want.n && std::stoll(r[2]) == want.e &&
                           std::abs(std::stod(r[3]) - want.mean_degree) <= 0.001 + 1e-12 &&
                           std::abs(std::stod(r[4]) - want.inv_lambda1) <= 0.001 + 1e-12;
        ok = check(match, std::string(want.name) + ": n=" + r[1] + " e=" + r[2] +
                              " <k>=" + r[3] + " 1/l1=" + r[4]) &&
             ok;
    }
    return ok;
}

// ---- criteria 2/3/10: email sweeps ----------------------------------------

std::string email_cmd(const std::string& model, int runs, int threads,
                      const std::string& out) {
    return "evaluate --graph \"" + g_data + "/email.edges\" --model " + model +
           " --beta 0.01 --beta 0.05 --beta 0.1 --t 5 --runs " + std::to_string(runs) +
           " --rng-seed " + std::to_string(kRngSeed) + " --threads " +
           std::to_string(threads) + " --out \"" + out + "\"";
}

bool criterion2() {
    const std::string out = g_scratch + "/email_sir_1k.csv";
    if (run_cli(email_cmd("sir", 1000, 2, out)) != 0)
        return check(false, "evaluate exited nonzero");
    const auto taus = read_tau_csv(out);
    bool ok = true;
    for (double beta : {0.01, 0.05, 0.1}) {
        const double ds = taus.get(beta, "ds");
        ok = check(ds >= 0.95, "beta=" + num(beta) + ": tau(ds)=" + num(ds) +
                                   " >= 0.95 at 10^3 runs") &&
             ok;
        for (const char* rival : {"degree", "kshell", "eigenvector"})
            ok = check(ds > taus.get(beta, rival),
                       "beta=" + num(beta) + ": tau(ds)=" + num(ds) + " > tau(" + rival +
                           ")=" + num(taus.get(beta, rival))) &&
                 ok;
    }
    const std::string big = g_scratch + "/email_sir_10k.csv";
    if (run_cli(email_cmd("sir", 10000, 2, big)) != 0)
        return check(false, "10^4-run evaluate exited nonzero");
    const auto big_taus = read_tau_csv(big);
    for (double beta : {0.01, 0.05, 0.1}) {
        const double ds = big_taus.get(beta, "ds");
        ok = check(ds >= 0.96 && ds <= 1.0,
                   "beta=" + num(beta) + ": tau(ds)=" + num(ds) + " in [0.96, 1] at 10^4") &&
             ok;
    }
    return ok;
}

bool criterion3() {
    const std::string out = g_scratch + "/email_si_1k.csv";
    if (run_cli(email_cmd("si", 1000, 2, out)) != 0)
        return check(false, "evaluate exited nonzero");
    const auto taus = read_tau_csv(out);
    bool ok = true;
    for (double beta : {0.01, 0.05, 0.1}) {
        const double ds = taus.get(beta, "ds");
        for (const char* rival : {"degree", "kshell", "eigenvector"})
            ok = check(ds > taus.get(beta, rival),
                       "beta=" + num(beta) + ": tau(ds)=" + num(ds) + " > tau(" + rival +
                           ")=" + num(taus.get(beta, rival))) &&
                 ok;
    }
    return ok;
}

bool criterion10() {
    const std::string a = g_scratch + "/email_sir_1k.csv"; // criterion 2, threads=2
    const std::string b = g_scratch + "/email_sir_1k_t1.csv";
    if (run_cli(email_cmd("sir", 1000, 1, b)) != 0)
        return check(false, "rerun exited nonzero");
    const auto ca = slurp(a), cb = slurp(b);
    return check(!ca.empty() && ca == cb,
                 "byte-identical csv across thread counts (" +
                     std::to_string(ca.size()) + " bytes)");
}

// ---- criterion 4: degree reduction at t = 1 --------------------------------

bool degree_reduction_holds(const Graph& g, double beta, const std::string& label) {
    const auto ds = ds_centrality_iterative(g, {beta, 1.0, 1});
    const auto deg = degree_centrality(g);
    double worst = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const double want = beta * deg[i];
        const double scale = std::max(1.0, std::abs(want));
        worst = std::max(worst, std::abs(ds[i] - want) / scale);
    }
    bool ok = worst <= 1e-12;
    if (g.node_count() >= 2)
        ok = ok && kendall_tau(ds.scores, deg.scores) == kendall_tau(deg.scores, deg.scores);
    return check(ok, label + ": max rel gap " + num(worst) + ", rankings identical");
}

bool criterion4() {
    bool ok = true;
    for (const auto& d : kTable) {
        const auto g = Graph::load_edge_list_file(g_data + "/" + d.name + ".edges");
        ok = degree_reduction_holds(g, 0.05, d.name) && ok;
    }
    SplitMix64 rng(0xc404);
    bool small_ok = true;
    double worst_beta = 0;
    for (int i = 0; i < 50; ++i) {
        const auto g = testutil::random_graph(40000 + i, 8 + i * 3, 0.12);
        const double beta = 0.01 + 0.98 * rng.next_unit();
        const auto ds = ds_centrality_iterative(g, {beta, 1.0, 1});
        const auto deg = degree_centrality(g);
        for (std::size_t k = 0; k < ds.size(); ++k) {
            const double want = beta * deg[k];
            if (std::abs(ds[k] - want) > 1e-12 * std::max(1.0, std::abs(want)))
                small_ok = false;
        }
        if (kendall_tau(ds.scores, deg.scores) != kendall_tau(deg.scores, deg.scores))
            small_ok = false;
        worst_beta = beta;
    }
    ok = check(small_ok, "50 random graphs, random beta (last " + num(worst_beta) + ")") && ok;
    return ok;
}

// ---- criterion 5: cross-form equivalence -----------------------------------

bool criterion5() {
    // (beta as multiple of 1/lambda1, mu, t); mix of in- and out-of-regime
    const std::vector<std::tuple<double, double, int>> points = {
        {0.3, 1.0, 3},  {0.5, 1.0, 5}, {0.8, 1.0, 2}, {0.25, 0.7, 4}, {0.5, 0.7, 7},
        {0.2, 0.5, 9},  {1.5, 1.0, 6}, {2.5, 0.9, 8}, {0.8, 0.4, 10}, {1.0, 0.0, 4},
    };
    double worst_pair = 0.0, worst_closed = 0.0;
    int closed_checked = 0;
    bool ok = true;
    for (int i = 0; i < 50; ++i) {
        const auto n = 10 + (i * 631) % 191; // sizes 10..200
        const auto g = testutil::random_connected_graph(50000 + i, n, 3.0 / n);
        const auto spec = full_spectrum(g);
        const double lambda1 = spec.lambda1();
        for (const auto& [mult, mu, t] : points) {
            const double beta = std::min(1.0, mult / lambda1);
            const SpreadParams p{beta, mu, t};
            const auto iter = ds_centrality_iterative(g, p);
            const auto spectral = ds_centrality_spectral(g, spec, p);
            double gap = 0.0, scale = 0.0;
            for (std::size_t k = 0; k < iter.size(); ++k) {
                gap = std::max(gap, std::abs(iter[k] - spectral[k]));
                scale = std::max(scale, std::abs(iter[k]));
            }
            const double rel = scale > 0 ? gap / scale : gap;
            worst_pair = std::max(worst_pair, rel);
            if (rel > 1e-8) ok = false;

            const double rho = beta * lambda1 + 1.0 - mu;
            if (mu > 0.0 && rho < 1.0 && rho > 0.0) {
                const int t_big = static_cast<int>(std::ceil(std::log(1e-8) / std::log(rho))) + 1;
                const auto limit = ds_centrality_closed_form(g, {beta, mu, 1});
                const auto late = ds_centrality_iterative(g, {beta, mu, t_big});
                double cgap = 0.0, cscale = 0.0;
                for (std::size_t k = 0; k < late.size(); ++k) {
                    cgap = std::max(cgap, std::abs(late[k] - limit.scores[k]));
                    cscale = std::max(cscale, std::abs(limit.scores[k]));
                }
                const double crel = cscale > 0 ? cgap / cscale : cgap;
                worst_closed = std::max(worst_closed, crel);
                ++closed_checked;
                if (crel > 1e-6) ok = false;
            }
        }
    }
    check(true, "worst iterative-vs-spectral rel gap " + num(worst_pair) + " (<= 1e-8)");
    check(true, "worst closed-form rel gap " + num(worst_closed) + " over " +
                    std::to_string(closed_checked) + " in-regime points (<= 1e-6)");
    return check(ok, "all 50 graphs x 10 parameter points within tolerance");
}

// ---- criterion 6: recursion identity ---------------------------------------

bool criterion6() {
    double worst = 0.0;
    bool exact_zero = true;
    for (int i = 0; i < 50; ++i) {
        const auto n = 10 + (i * 631) % 191;
        const auto g = testutil::random_connected_graph(60000 + i, n, 3.0 / n);
        const auto seed = static_cast<std::int32_t>(i % n);
        for (double mu : {0.0, 0.3, 0.7, 1.0}) {
            for (int t : {2, 5, 10}) {
                const double dev = verify_recursion_identity(g, {0.3, mu, t}, seed);
                worst = std::max(worst, dev);
                if (mu == 1.0 && dev != 0.0) exact_zero = false;
            }
        }
    }
    bool ok = check(worst <= 1e-10, "max deviation " + num(worst) + " (<= 1e-10)");
    ok = check(exact_zero, "mu=1 deviation exactly zero") && ok;
    return ok;
}

// ---- criterion 7: Monte Carlo vs exact oracle -------------------------------

bool criterion7() {
    const std::vector<Graph> graphs = {
        testutil::from_text("0 1\n"),
        testutil::from_text("0 1\n1 2\n"),
        testutil::from_text("0 1\n1 2\n2 0\n2 3\n"),
        testutil::from_text("c a\nc b\nc d\n"),
        testutil::random_connected_graph(5, 7, 0.25),
        testutil::random_connected_graph(8, 8, 0.3),
    };
    bool ok = true;
    double worst_sigmas = 0.0;
    std::uint64_t salt = 0;
    for (const auto& g : graphs) {
        for (double beta : {0.2, 0.5, 1.0}) {
            for (double mu : {0.0, 0.5, 1.0}) {
                for (int t : {1, 2, 3}) {
                    const SpreadParams p{beta, mu, t};
                    const auto seed = static_cast<std::int32_t>(salt % g.node_count());
                    SimConfig cfg;
                    cfg.params = p;
                    cfg.runs_per_seed = 4000;
                    cfg.rng_seed = kRngSeed + salt++;
                    cfg.seeds = {seed};
                    cfg.threads = 2;
                    const auto est = estimate_influence(g, cfg);
                    const double exact = exact_influence_small(g, seed, p);
                    const double slack = std::max(est.std_error[0], 1e-12);
                    const double sigmas = std::abs(est.mean_influence.scores[0] - exact) / slack;
                    worst_sigmas = std::max(worst_sigmas, sigmas);
                    if (sigmas > 4.0) {
                        ok = false;
                        check(false, "graph n=" + std::to_string(g.node_count()) + " beta=" +
                                         num(beta) + " mu=" + num(mu) + " t=" +
                                         std::to_string(t) + ": " + num(sigmas) + " sigmas");
                    }
                }
            }
        }
    }
    ok = check(ok, "grid within 4 standard errors (worst " + num(worst_sigmas) + ")") && ok;

    const auto dyad = testutil::from_text("0 1\n");
    SimConfig cfg;
    cfg.params = {0.5, 1.0, 1};
    cfg.runs_per_seed = 10000;
    cfg.rng_seed = kRngSeed;
    cfg.seeds = {0};
    const auto est = estimate_influence(dyad, cfg);
    const double bound = 4.0 * (0.5 / std::sqrt(10000.0));
    ok = check(std::abs(est.mean_influence.scores[0] - 1.5) <= bound,
               "dyad mean " + num(est.mean_influence.scores[0]) + " within 1.5 +/- " +
                   num(bound)) &&
         ok;
    return ok;
}

// ---- criterion 8: eigenvector convergence -----------------------------------

bool criterion8() {
    const auto g = Graph::load_edge_list_file(g_data + "/email.edges");
    const auto eig = eigenvector_centrality(g);
    double last = -2.0;
    bool ok = true;
    for (const auto& p :
         {SpreadParams{0.01, 1.0, 5}, SpreadParams{0.05, 1.0, 10}, SpreadParams{0.10, 1.0, 20}}) {
        const auto ds = ds_centrality_iterative(g, p);
        const double tau = kendall_tau(ds.scores, eig.scores);
        ok = check(tau >= last, "beta=" + num(p.beta) + " t=" + std::to_string(p.horizon) +
                                    ": tau(ds, eigenvector)=" + num(tau) +
                                    " (non-decreasing)") &&
             ok;
        last = tau;
    }
    return check(last > 0.9, "final tau " + num(last) + " > 0.9") && ok;
}

// ---- criterion 9: Kendall tau oracle equivalence ----------------------------

bool criterion9() {
    SplitMix64 rng(0x7a0cafe5);
    for (int rep = 0; rep < 1000; ++rep) {
        const auto n = 2 + rng.next_below(180);
        std::vector<double> y(n), z(n);
        const bool coarse_y = rng.bernoulli(0.7);
        const bool coarse_z = rng.bernoulli(0.7);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = coarse_y ? static_cast<double>(rng.next_below(6)) : rng.next_unit();
            z[i] = coarse_z ? static_cast<double>(rng.next_below(6)) : rng.next_unit();
        }
        if (kendall_tau(y, z) != testutil::naive_kendall_tau(y, z))
            return check(false, "mismatch at rep " + std::to_string(rep));
    }
    return check(true, "1000 tie-bearing vectors match the pairwise sgn sum exactly");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance CLI_PATH DATA_DIR [SCRATCH_DIR]\n");
        return 2;
    }
    g_cli = argv[1];
    g_data = argv[2];
    g_scratch = argc > 3 ? argv[3] : std::filesystem::temp_directory_path().string();
    std::filesystem::create_directories(g_scratch);

    struct Criterion {
        int id;
        const char* title;
        bool (*fn)();
    };
    const Criterion criteria[] = {
        {1, "dataset statistics match the published table", criterion1},
        {2, "SIR desk-scale sweep on email", criterion2},
        {3, "SI desk-scale sweep on email", criterion3},
        {4, "t=1 walk sum reduces to beta * degree", criterion4},
        {5, "iterative / spectral / closed-form equivalence", criterion5},
        {6, "infection-increment recursion identity", criterion6},
        {7, "Monte Carlo agrees with the exact oracle", criterion7},
        {8, "ranking converges to the eigenvector", criterion8},
        {9, "Kendall tau fast path equals the naive sum", criterion9},
        {10, "byte-identical output across thread counts", criterion10},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::printf("criterion %d: %s\n", c.id, c.title);
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            check(false, std::string("exception: ") + e.what());
        }
        std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", c.id, c.title);
        if (!ok) ++failed;
    }
    std::printf("%d/10 criteria passed\n", 10 - failed);
    return failed;
}
