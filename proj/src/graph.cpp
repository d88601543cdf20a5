#include "gfl/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>
#include <vector>

#include "gfl/rng.hpp"

namespace gfl {

Graph::Graph(int sites, std::vector<std::pair<int, int>> edges)
    : n_(sites), edges_(std::move(edges)) {
    if (n_ < 2) throw std::invalid_argument("graph needs at least 2 sites, got " + std::to_string(n_));
    if (edges_.empty()) throw std::invalid_argument("graph needs at least one edge");
    for (auto& [a, b] : edges_) {
        if (a == b) throw std::invalid_argument("self-loop at site " + std::to_string(a));
        if (a > b) std::swap(a, b);
        if (a < 0 || b >= n_)
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(a) + " " +
                                        std::to_string(b));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("duplicate edge");
    adjacency_.assign(n_, {});
    for (const auto& [a, b] : edges_) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
}

EdgeListParseError::EdgeListParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Graph make_complete(int sites) {
    if (sites < 2) throw std::invalid_argument("complete graph needs n >= 2");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<size_t>(sites) * (sites - 1) / 2);
    for (int a = 0; a < sites; ++a)
        for (int b = a + 1; b < sites; ++b) edges.emplace_back(a, b);
    return Graph(sites, std::move(edges));
}

Graph make_star(int leaves) {
    if (leaves < 1) throw std::invalid_argument("star graph needs at least 1 leaf");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(leaves);
    for (int leaf = 1; leaf <= leaves; ++leaf) edges.emplace_back(0, leaf);
    return Graph(leaves + 1, std::move(edges));
}

Graph make_ring(int sites) {
    if (sites < 3) throw std::invalid_argument("ring graph needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(sites);
    for (int a = 0; a < sites; ++a) edges.emplace_back(a, (a + 1) % sites);
    return Graph(sites, std::move(edges));
}

Graph make_erdos_renyi(int sites, double p, uint64_t seed) {
    if (sites < 2) throw std::invalid_argument("random graph needs n >= 2");
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("edge probability must be in (0, 1]");
    Xoshiro256pp rng(derive_seed(seed, 0x6772617068ull));  // per-purpose stream
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < sites; ++a)
        for (int b = a + 1; b < sites; ++b)
            if (rng.uniform01() < p) edges.emplace_back(a, b);
    if (edges.empty())
        throw std::runtime_error("random graph came out empty; raise p or change the seed");
    return Graph(sites, std::move(edges));
}

namespace {

bool parse_int(const std::string& token, long long& value) {
    if (token.empty()) return false;
    size_t pos = 0;
    try {
        value = std::stoll(token, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == token.size();
}

}  // namespace

Graph from_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool saw_content = false;
    long long header_n = -1;
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> edges;
    long long max_label = -1;

    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first, second, extra;
        if (!(ls >> first)) continue;  // blank or comment-only

        if (!saw_content && first == "n") {
            if (!(ls >> second) || (ls >> extra))
                throw EdgeListParseError(line_no, "header must be exactly `n <count>`");
            long long count = 0;
            if (!parse_int(second, count) || count < 2)
                throw EdgeListParseError(line_no, "bad site count `" + second + "`");
            header_n = count;
            saw_content = true;
            continue;
        }
        saw_content = true;

        if (!(ls >> second) || (ls >> extra))
            throw EdgeListParseError(line_no, "expected two site labels");
        long long a = 0, b = 0;
        if (!parse_int(first, a) || !parse_int(second, b) || a < 0 || b < 0)
            throw EdgeListParseError(line_no, "bad site label");
        if (a == b) throw EdgeListParseError(line_no, "self-loop at site " + std::to_string(a));
        if (header_n >= 0 && (a >= header_n || b >= header_n))
            throw EdgeListParseError(line_no, "site label exceeds declared count");
        std::pair<int, int> edge{static_cast<int>(std::min(a, b)), static_cast<int>(std::max(a, b))};
        if (!seen.insert(edge).second)
            throw EdgeListParseError(line_no, "duplicate edge " + std::to_string(edge.first) + " " +
                                                  std::to_string(edge.second));
        edges.push_back(edge);
        max_label = std::max(max_label, std::max(a, b));
    }

    if (edges.empty()) throw EdgeListParseError(line_no, "no edges");
    int sites = header_n >= 0 ? static_cast<int>(header_n) : static_cast<int>(max_label + 1);
    return Graph(sites, std::move(edges));
}

std::string to_edge_list(const Graph& g) {
    int max_label = 0;
    for (const auto& [a, b] : g.edges()) max_label = std::max(max_label, b);
    std::string out;
    if (max_label + 1 != g.site_count())
        out += "n " + std::to_string(g.site_count()) + "\n";
    for (const auto& [a, b] : g.edges())
        out += std::to_string(a) + " " + std::to_string(b) + "\n";
    return out;
}

bool is_connected(const Graph& g) {
    std::vector<char> visited(g.site_count(), 0);
    std::vector<int> stack{0};
    visited[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.neighbors(v)) {
            if (!visited[w]) {
                visited[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == g.site_count();
}

}  // namespace gfl
