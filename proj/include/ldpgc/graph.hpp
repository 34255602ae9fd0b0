#pragma once
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ldpgc {

// Undirected simple graph as sorted adjacency lists. Immutable after
// construction, so concurrent reads from many trials are safe.
class Graph {
public:
    Graph() = default;

    // Builds from an unordered edge list over ids 0..n-1. Self-loops are
    // dropped, duplicates merged, both orientations accepted.
    Graph(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

    std::size_t n() const { return adjacency_.size(); }
    std::size_t m() const { return m_; }

    std::size_t degree(std::uint32_t i) const;
    std::size_t max_degree() const { return max_degree_; }
    const std::vector<std::uint32_t>& neighbors(std::uint32_t i) const;
    bool has_edge(std::uint32_t i, std::uint32_t j) const;

    void write_edge_list(std::ostream& out) const;

private:
    void check_node(std::uint32_t i) const;

    std::vector<std::vector<std::uint32_t>> adjacency_;
    std::size_t m_ = 0;
    std::size_t max_degree_ = 0;
};

// Reads whitespace-separated node-id pairs; lines starting with '#' are
// comments. Ids are compacted to 0..N-1 in first-appearance order.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

// Deterministic for fixed (n, p, seed): each unordered pair is an edge
// independently with probability p.
Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed);

}  // namespace ldpgc
