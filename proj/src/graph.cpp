#include "dscent/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "dscent/error.hpp"

namespace dscent {

Graph Graph::build(std::vector<std::string> labels,
                   std::vector<std::pair<std::int32_t, std::int32_t>> edges,
                   std::int64_t self_loops) {
    const auto n = static_cast<std::int32_t>(labels.size());
    for (auto& [a, b] : edges) {
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    const auto before = static_cast<std::int64_t>(edges.size());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    Graph g;
    g.labels_ = std::move(labels);
    g.edge_count_ = static_cast<std::int64_t>(edges.size());
    g.repairs_.self_loops_dropped = self_loops;
    g.repairs_.duplicate_edges_collapsed = before - g.edge_count_;

    std::vector<std::int32_t> deg(n, 0);
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::int32_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
    g.adjacency_.resize(static_cast<std::size_t>(g.offsets_[n]));
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : edges) {
        g.adjacency_[cursor[a]++] = b;
        g.adjacency_[cursor[b]++] = a;
    }
    for (std::int32_t v = 0; v < n; ++v)
        std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1]);
    return g;
}

Graph Graph::load_edge_list(std::istream& in, const ParseOptions& opts) {
    std::unordered_map<std::string, std::int32_t> index_of;
    std::vector<std::string> labels;
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    std::int64_t self_loops = 0;

    auto intern = [&](const std::string& tok) {
        auto [it, inserted] = index_of.try_emplace(tok, static_cast<std::int32_t>(labels.size()));
        if (inserted) labels.push_back(tok);
        return it->second;
    };

    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || opts.comment_chars.find(line.front()) != std::string::npos)
            continue;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a)) continue; // whitespace-only line
        if (!(fields >> b) || (fields >> extra))
            throw DataError("edge list line " + std::to_string(line_no) +
                            ": expected exactly two node tokens");
        const auto ia = intern(a);
        const auto ib = intern(b);
        if (ia == ib) {
            ++self_loops;
            continue;
        }
        edges.emplace_back(ia, ib);
    }
    if (labels.empty()) throw DataError("empty input: no edges and no nodes");
    return build(std::move(labels), std::move(edges), self_loops);
}

Graph Graph::load_edge_list_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list file: " + path);
    return load_edge_list(in, opts);
}

Graph Graph::from_edges(std::int32_t node_count,
                        const std::vector<std::pair<std::int32_t, std::int32_t>>& edges) {
    if (node_count < 1) throw DataError("graph needs at least one node");
    std::vector<std::string> labels(node_count);
    for (std::int32_t v = 0; v < node_count; ++v) labels[v] = std::to_string(v);
    std::vector<std::pair<std::int32_t, std::int32_t>> kept;
    kept.reserve(edges.size());
    std::int64_t self_loops = 0;
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= node_count || b < 0 || b >= node_count)
            throw DataError("edge endpoint out of range");
        if (a == b) {
            ++self_loops;
            continue;
        }
        kept.emplace_back(a, b);
    }
    return build(std::move(labels), std::move(kept), self_loops);
}

std::int32_t Graph::max_degree() const {
    std::int32_t best = 0;
    for (std::int32_t v = 0; v < node_count(); ++v) best = std::max(best, degree(v));
    return best;
}

void Graph::multiply(std::span<const double> x, std::span<double> y) const {
    const auto n = node_count();
    for (std::int32_t v = 0; v < n; ++v) {
        double acc = 0.0;
        for (std::int64_t k = offsets_[v]; k < offsets_[v + 1]; ++k)
            acc += x[static_cast<std::size_t>(adjacency_[k])];
        y[static_cast<std::size_t>(v)] = acc;
    }
}

void Graph::write_canonical(std::ostream& out) const {
    const auto n = node_count();
    for (std::int32_t v = 0; v < n; ++v)
        for (auto w : neighbors(v))
            if (w > v) out << v << ' ' << w << '\n';
}

std::string Graph::canonical_edge_list() const {
    std::ostringstream out;
    write_canonical(out);
    return out.str();
}

} // namespace dscent
