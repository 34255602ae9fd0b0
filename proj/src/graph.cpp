#include "ldpgc/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "ldpgc/error.hpp"
#include "ldpgc/rng.hpp"

namespace ldpgc {

Graph::Graph(std::size_t n,
             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    adjacency_.assign(n, {});
    for (auto [a, b] : edges) {
        if (a >= n || b >= n)
            throw UsageError("edge endpoint out of range: " + std::to_string(std::max(a, b)));
        if (a == b) continue;  // self-loops dropped
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto& nbrs : adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        m_ += nbrs.size();
        max_degree_ = std::max(max_degree_, nbrs.size());
    }
    m_ /= 2;
}

std::size_t Graph::degree(std::uint32_t i) const {
    check_node(i);
    return adjacency_[i].size();
}

const std::vector<std::uint32_t>& Graph::neighbors(std::uint32_t i) const {
    check_node(i);
    return adjacency_[i];
}

bool Graph::has_edge(std::uint32_t i, std::uint32_t j) const {
    check_node(i);
    check_node(j);
    const auto& nbrs = adjacency_[i];
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

void Graph::check_node(std::uint32_t i) const {
    if (i >= adjacency_.size())
        throw UsageError("node index " + std::to_string(i) + " out of range (N=" +
                         std::to_string(adjacency_.size()) + ")");
}

void Graph::write_edge_list(std::ostream& out) const {
    // Introduction pass: emit one edge per still-unseen node in ascending id
    // order, so the stream's first-appearance order matches the ids and a
    // reload reproduces this labeling. Remaining edges follow sorted.
    std::size_t n = adjacency_.size();
    std::vector<bool> seen(n, false);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> introduced;
    for (std::uint32_t v = 0; v < n; ++v) {
        if (seen[v] || adjacency_[v].empty()) continue;
        std::uint32_t partner = adjacency_[v][0];  // sorted: smallest neighbor
        if (partner < v)
            out << partner << ' ' << v << '\n';
        else
            out << v << ' ' << partner << '\n';
        seen[v] = seen[partner] = true;
        introduced.emplace_back(std::min(v, partner), std::max(v, partner));
    }
    std::sort(introduced.begin(), introduced.end());
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j : adjacency_[i])
            if (i < j && !std::binary_search(introduced.begin(), introduced.end(),
                                             std::make_pair(i, j)))
                out << i << ' ' << j << '\n';
}

Graph load_edge_list(std::istream& in) {
    std::unordered_map<std::uint64_t, std::uint32_t> compact;  // first-appearance order
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    auto id_of = [&](std::uint64_t raw) {
        auto [it, inserted] = compact.emplace(raw, static_cast<std::uint32_t>(compact.size()));
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    bool saw_edge = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;
        std::istringstream ls(line);
        std::string ta, tb;
        if (!(ls >> ta >> tb))
            throw IoError("line " + std::to_string(line_no) + ": expected two node ids");
        std::string extra;
        if (ls >> extra)
            throw IoError("line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
        std::uint64_t a, b;
        try {
            std::size_t used;
            a = std::stoull(ta, &used);
            if (used != ta.size()) throw std::invalid_argument(ta);
            b = std::stoull(tb, &used);
            if (used != tb.size()) throw std::invalid_argument(tb);
        } catch (const std::exception&) {
            throw IoError("line " + std::to_string(line_no) + ": malformed node id");
        }
        std::uint32_t ia = id_of(a);
        std::uint32_t ib = id_of(b);
        saw_edge = true;
        edges.emplace_back(ia, ib);
    }
    if (!saw_edge) throw IoError("edge list input is empty");
    return Graph(compact.size(), edges);
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return load_edge_list(in);
}

Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (n < 1) throw UsageError("gen_erdos_renyi: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw UsageError("gen_erdos_renyi: p must be in [0,1]");
    RngStream rng(seed, 0, 0, kGeneratorParty, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (rng.uniform01() < p) edges.emplace_back(i, j);
    return Graph(n, edges);
}

}  // namespace ldpgc
