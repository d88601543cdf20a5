#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gfl {

// Undirected simple graph on sites 0..n-1. Edges are stored as (min,max)
// pairs in lexicographic order, so equal graphs compare equal and the edge
// index used by the propagation process is reproducible.
class Graph {
public:
    // Canonicalizes and validates: n >= 2, at least one edge, endpoints in
    // range, no self-loops, no duplicates.
    Graph(int sites, std::vector<std::pair<int, int>> edges);

    int site_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<int>& neighbors(int site) const { return adjacency_[site]; }
    int degree(int site) const { return static_cast<int>(adjacency_[site].size()); }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
};

class EdgeListParseError : public std::runtime_error {
public:
    EdgeListParseError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

Graph make_complete(int sites);
Graph make_star(int leaves);
Graph make_ring(int sites);

// Each unordered pair is included independently with probability p, driven by
// the seeded generator; deterministic for fixed (n, p, seed).
Graph make_erdos_renyi(int sites, double p, uint64_t seed);

// Text format: one edge per line as two base-10 labels, `#` comments, blank
// lines ignored, optional leading `n <count>` line fixing the site count.
Graph from_edge_list(std::string_view text);

// Canonical order; emits the `n <count>` header only when the edge lines
// alone would under-count the sites.
std::string to_edge_list(const Graph& g);

bool is_connected(const Graph& g);

}  // namespace gfl
