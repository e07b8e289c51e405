#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dscent {

struct ParseOptions {
    /// Lines whose first character is one of these are skipped.
    std::string comment_chars = "#%";
};

/// Input repairs applied while building a graph.
struct RepairCounts {
    std::int64_t self_loops_dropped = 0;
    std::int64_t duplicate_edges_collapsed = 0;
};

/// Immutable undirected simple graph in compressed sparse adjacency form.
/// Neighbor lists are sorted ascending; there are no self-loops and no
/// duplicate edges, so the adjacency matrix is binary, symmetric and has a
/// zero diagonal. Safe to share across threads for concurrent reads.
class Graph {
public:
    /// Parses a whitespace-separated edge list: two node tokens per data
    /// line, '#'/'%' comment lines and blank lines ignored. Labels are
    /// mapped to dense indices 0..n-1 in first-appearance order. Duplicate
    /// edges are collapsed and self-loops dropped, both counted.
    /// Throws DataError on a malformed line (with its line number) or when
    /// the input contains no nodes at all.
    static Graph load_edge_list(std::istream& in, const ParseOptions& opts = {});

    /// Convenience overload; throws DataError when the file cannot be read.
    static Graph load_edge_list_file(const std::string& path,
                                     const ParseOptions& opts = {});

    /// Builds a graph from index pairs over nodes 0..node_count-1 (labels
    /// become decimal strings). Same repair rules as load_edge_list.
    static Graph from_edges(std::int32_t node_count,
                            const std::vector<std::pair<std::int32_t, std::int32_t>>& edges);

    std::int32_t node_count() const { return static_cast<std::int32_t>(offsets_.size()) - 1; }
    std::int64_t edge_count() const { return edge_count_; }
    double mean_degree() const {
        return 2.0 * static_cast<double>(edge_count_) / node_count();
    }

    std::int32_t degree(std::int32_t v) const {
        return static_cast<std::int32_t>(offsets_[v + 1] - offsets_[v]);
    }
    std::span<const std::int32_t> neighbors(std::int32_t v) const {
        return {adjacency_.data() + offsets_[v],
                static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
    }
    std::int32_t max_degree() const;

    const std::string& label(std::int32_t v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const RepairCounts& repairs() const { return repairs_; }

    /// y = A x with fixed per-row accumulation order.
    void multiply(std::span<const double> x, std::span<double> y) const;

    /// Canonical serialization: one "i j" line per edge, i < j by dense
    /// index, lines ascending.
    void write_canonical(std::ostream& out) const;
    std::string canonical_edge_list() const;

private:
    Graph() = default;
    static Graph build(std::vector<std::string> labels,
                       std::vector<std::pair<std::int32_t, std::int32_t>> edges,
                       std::int64_t self_loops);

    std::vector<std::int64_t> offsets_;
    std::vector<std::int32_t> adjacency_;
    std::vector<std::string> labels_;
    std::int64_t edge_count_ = 0;
    RepairCounts repairs_;
};

} // namespace dscent
