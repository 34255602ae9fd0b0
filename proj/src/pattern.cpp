#include "ldpgc/pattern.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "ldpgc/error.hpp"

namespace ldpgc {

namespace {
constexpr int kMaxPatternEdges = 10;  // (k+1)^(k+1) and oracle cost explode past this
}

std::vector<std::vector<int>> Pattern::adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

int TreeForm::leaf_count() const {
    return static_cast<int>(std::count(leaf.begin(), leaf.end(), true));
}

Pattern make_path_pattern(int k) {
    if (k < 1) throw UsageError("path pattern needs k >= 1");
    Pattern p;
    p.vertex_count = k + 1;
    for (int i = 0; i < k; ++i) p.edges.emplace_back(i, i + 1);
    return make_pattern(p.vertex_count, p.edges);
}

Pattern make_star_pattern(int k) {
    if (k < 1) throw UsageError("star pattern needs k >= 1");
    Pattern p;
    p.vertex_count = k + 1;
    for (int i = 1; i <= k; ++i) p.edges.emplace_back(0, i);
    return make_pattern(p.vertex_count, p.edges);
}

Pattern make_pattern(int vertex_count, std::vector<std::pair<int, int>> edges) {
    if (edges.empty()) throw UsageError("pattern validation: no edges");
    if (static_cast<int>(edges.size()) > kMaxPatternEdges)
        throw UsageError("pattern validation: k > 10 exceeds the supported size cap");
    std::vector<std::vector<int>> adj(vertex_count);
    std::vector<std::pair<int, int>> seen;
    for (auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
            throw UsageError("pattern validation: vertex label out of range");
        if (a == b) throw UsageError("pattern validation: self-loop detected");
        auto key = std::minmax(a, b);
        if (std::find(seen.begin(), seen.end(), std::pair<int, int>(key)) != seen.end())
            throw UsageError("pattern validation: duplicate edge detected");
        seen.emplace_back(key);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    int e = static_cast<int>(edges.size());
    if (e >= vertex_count) throw UsageError("pattern validation: cycle detected");
    if (e < vertex_count - 1) throw UsageError("pattern validation: pattern disconnected");
    // exactly k edges over k+1 vertices: a tree iff one BFS covers everything
    std::vector<bool> visited(vertex_count, false);
    std::vector<int> stack{0};
    visited[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : adj[v])
            if (!visited[u]) {
                visited[u] = true;
                ++reached;
                stack.push_back(u);
            }
    }
    if (reached != vertex_count)
        throw UsageError("pattern validation: cycle detected (pattern not connected)");
    Pattern p;
    p.vertex_count = vertex_count;
    p.edges = std::move(edges);
    return p;
}

namespace {

int parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t used;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("pattern spec: malformed " + what + " '" + s + "'");
    }
}

}  // namespace

ParsedPatternSpec parse_pattern_spec(const std::string& text) {
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        std::string head = text.substr(0, colon);
        int k = parse_int(text.substr(colon + 1), "size");
        if (k < 1 || k > kMaxPatternEdges)
            throw UsageError("pattern spec: k must be in 1..10, got " + std::to_string(k));
        if (head == "walk") return {ParsedPatternSpec::Kind::walk, k, std::nullopt};
        if (head == "path") return {ParsedPatternSpec::Kind::path, k, make_path_pattern(k)};
        if (head == "star") return {ParsedPatternSpec::Kind::star, k, make_star_pattern(k)};
        throw UsageError("pattern spec: unknown builtin '" + head + "'");
    }
    // explicit "a-b,c-d" edge list
    std::vector<std::pair<int, int>> edges;
    int max_label = 0;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto dash = item.find('-');
        if (dash == std::string::npos)
            throw UsageError("pattern spec: expected 'a-b' pair, got '" + item + "'");
        int a = parse_int(item.substr(0, dash), "vertex label");
        int b = parse_int(item.substr(dash + 1), "vertex label");
        edges.emplace_back(a, b);
        max_label = std::max({max_label, a, b});
    }
    if (edges.empty()) throw UsageError("pattern spec: empty");
    Pattern p = make_pattern(max_label + 1, std::move(edges));
    return {ParsedPatternSpec::Kind::custom, p.k(), std::move(p)};
}

Pattern parse_pattern(const std::string& text) {
    auto spec = parse_pattern_spec(text);
    if (!spec.pattern)
        throw UsageError("pattern spec: walk:<k> is not a subgraph pattern");
    return *spec.pattern;
}

TreeForm formulate_tree(const Pattern& p, std::optional<int> root) {
    auto adj = p.adjacency();
    int n = p.vertex_count;
    int r;
    if (root) {
        r = *root;
        if (r < 0 || r >= n)
            throw UsageError("tree root " + std::to_string(r) + " out of range");
    } else {
        // Internal roots maximize the leaf set and so minimize rounds.
        r = 0;
        for (int v = 1; v < n; ++v)
            if (adj[v].size() > adj[r].size()) r = v;
    }

    TreeForm t;
    t.pattern = p;
    t.k = p.k();
    t.root_vertex = r;
    t.subscript_of_vertex.assign(n, -1);
    t.vertex_of_subscript.assign(n, -1);

    // Post-order DFS, children in ascending label order.
    int next = 0;
    std::function<void(int, int)> dfs = [&](int v, int from) {
        for (int u : adj[v])
            if (u != from) dfs(u, v);
        t.subscript_of_vertex[v] = next;
        t.vertex_of_subscript[next] = v;
        ++next;
    };
    dfs(r, -1);

    t.parent.assign(n, -1);
    t.children.assign(n, {});
    t.leaf.assign(n, false);
    t.subtree_edges.assign(n, 0);
    for (int v = 0; v < n; ++v) {
        int sv = t.subscript_of_vertex[v];
        for (int u : adj[v]) {
            int su = t.subscript_of_vertex[u];
            if (su < sv) t.children[sv].push_back(su);
        }
        std::sort(t.children[sv].begin(), t.children[sv].end());
    }
    for (int s = 0; s <= t.k; ++s) {
        t.leaf[s] = t.children[s].empty();
        for (int c : t.children[s]) {
            t.parent[c] = s;
            t.subtree_edges[s] += 1 + t.subtree_edges[c];
        }
    }
    t.sigma = automorphism_count(p);
    return t;
}

namespace {

// Canonical encoding of the subtree hanging off `v` away from `from`;
// multiplies `sigma` by g! for every group of g identical child encodings.
std::string ahu_encode(const std::vector<std::vector<int>>& adj, int v, int from,
                       std::uint64_t& sigma) {
    std::vector<std::string> child_codes;
    for (int u : adj[v])
        if (u != from) child_codes.push_back(ahu_encode(adj, u, v, sigma));
    std::sort(child_codes.begin(), child_codes.end());
    std::string code = "(";
    std::size_t i = 0;
    while (i < child_codes.size()) {
        std::size_t j = i;
        while (j < child_codes.size() && child_codes[j] == child_codes[i]) ++j;
        for (std::size_t g = 2; g <= j - i; ++g) sigma *= g;
        for (; i < j; ++i) code += child_codes[i];
    }
    code += ")";
    return code;
}

std::vector<int> tree_centers(const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    if (n == 1) return {0};
    std::vector<int> deg(n), order;
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(adj[v].size());
        if (deg[v] == 1) layer.push_back(v);
    }
    // peel leaves until the center (one or two adjacent vertices) remains
    int remaining = n;
    std::vector<bool> removed(n, false);
    while (remaining > 2) {
        std::vector<int> next_layer;
        for (int v : layer) {
            removed[v] = true;
            --remaining;
            for (int u : adj[v])
                if (!removed[u] && --deg[u] == 1) next_layer.push_back(u);
        }
        layer = std::move(next_layer);
    }
    std::vector<int> centers;
    for (int v = 0; v < n; ++v)
        if (!removed[v]) centers.push_back(v);
    return centers;
}

}  // namespace

std::uint64_t automorphism_count(const Pattern& p) {
    auto adj = p.adjacency();
    auto centers = tree_centers(adj);
    std::uint64_t sigma = 1;
    if (centers.size() == 1) {
        ahu_encode(adj, centers[0], -1, sigma);
        return sigma;
    }
    // Two centers: automorphisms fix or swap them across the middle edge.
    int a = centers[0], b = centers[1];
    std::string ca = ahu_encode(adj, a, b, sigma);
    std::string cb = ahu_encode(adj, b, a, sigma);
    if (ca == cb) sigma *= 2;
    return sigma;
}

int round_count(const TreeForm& t) { return t.k + 2 - t.leaf_count(); }

}  // namespace ldpgc
