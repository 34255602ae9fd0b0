#include "ldpgc/oracle.hpp"

#include <cassert>
#include <cmath>
#include <functional>
#include <string>

#include "ldpgc/error.hpp"

namespace ldpgc {

namespace {

void check_walk_args(const Graph& g, int k) {
    if (k < 1) throw UsageError("walk length k must be >= 1");
    if (k > 30) throw UsageError("walk length k > 30 would overflow the count type");
    // N * d(G)^k stays far below 2^127 for k <= 30 on any graph that fits memory,
    // except pathological dense cases; estimate in floating point.
    double est = static_cast<double>(g.n());
    for (int i = 0; i < k; ++i) est *= std::max<std::size_t>(g.max_degree(), 1);
    if (est > 1e36) throw UsageError("walk count would overflow 128-bit counts");
}

std::uint64_t guard_estimate(const Graph& g, int k) {
    double est = static_cast<double>(g.n());
    for (int i = 0; i < k; ++i) est *= std::max<std::size_t>(g.max_degree(), 1);
    return est > 1e18 ? ~0ULL : static_cast<std::uint64_t>(est);
}

}  // namespace

Count walk_count_oriented(const Graph& g, int k) {
    check_walk_args(g, k);
    std::vector<Count> cur(g.n(), 1), next(g.n(), 0);
    for (int step = 0; step < k; ++step) {
        for (std::uint32_t i = 0; i < g.n(); ++i) {
            Count acc = 0;
            for (std::uint32_t j : g.neighbors(i)) acc += cur[j];
            next[i] = acc;
        }
        std::swap(cur, next);
    }
    Count total = 0;
    for (Count v : cur) total += v;
    return total;
}

Count walk_count_unoriented(const Graph& g, int k) {
    Count wk = walk_count_oriented(g, k);
    if (k % 2 == 1) return wk / 2;
    Count symmetric = walk_count_oriented(g, k / 2);  // S_k = W_{k/2}
    return (wk + symmetric) / 2;
}

Count path_count_oriented(const Graph& g, int k, std::uint64_t work_guard) {
    if (k < 1) throw UsageError("path length k must be >= 1");
    if (guard_estimate(g, k) > work_guard)
        throw SizeGuardError(
            "path enumeration guard exceeded (N*d(G)^k too large); "
            "use the DP mechanisms for graphs of this size");
    Count total = 0;
    std::vector<std::uint32_t> stack;
    std::vector<bool> on_path(g.n(), false);
    // iterative DFS over simple paths, counting both orientations
    std::vector<std::size_t> cursor;
    for (std::uint32_t s = 0; s < g.n(); ++s) {
        stack.assign(1, s);
        cursor.assign(1, 0);
        on_path.assign(g.n(), false);
        on_path[s] = true;
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            const auto& nbrs = g.neighbors(v);
            if (cursor.back() >= nbrs.size()) {
                on_path[v] = false;
                stack.pop_back();
                cursor.pop_back();
                continue;
            }
            std::uint32_t u = nbrs[cursor.back()++];
            if (on_path[u]) continue;
            if (static_cast<int>(stack.size()) == k) {
                ++total;  // path of k edges completed
                continue;
            }
            stack.push_back(u);
            cursor.push_back(0);
            on_path[u] = true;
        }
    }
    return total;
}

namespace {

// Assign subscripts k down to 0; every non-root attaches to its already
// assigned parent, so candidates are just that node's neighbors.
template <typename RootFilter, typename NodeFilter>
Count count_embeddings(const Graph& g, const TreeForm& t, RootFilter root_ok,
                       NodeFilter node_ok) {
    int k = t.k;
    std::vector<std::uint32_t> assigned(k + 1);
    std::vector<bool> used(g.n(), false);
    Count total = 0;
    std::function<void(int)> place = [&](int subscript) {
        if (subscript < 0) {
            ++total;
            return;
        }
        std::uint32_t parent_node = assigned[t.parent[subscript]];
        for (std::uint32_t cand : g.neighbors(parent_node)) {
            if (used[cand] || !node_ok(subscript, cand)) continue;
            used[cand] = true;
            assigned[subscript] = cand;
            place(subscript - 1);
            used[cand] = false;
        }
    };
    for (std::uint32_t root = 0; root < g.n(); ++root) {
        if (!root_ok(root)) continue;
        used[root] = true;
        assigned[k] = root;
        place(k - 1);
        used[root] = false;
    }
    return total;
}

}  // namespace

Count ordered_embedding_count(const Graph& g, const TreeForm& t,
                              std::uint64_t work_guard) {
    if (guard_estimate(g, t.k) > work_guard)
        throw SizeGuardError("pattern embedding guard exceeded (N*d(G)^k too large)");
    return count_embeddings(
        g, t, [](std::uint32_t) { return true; },
        [](int, std::uint32_t) { return true; });
}

Count pattern_count(const Graph& g, const Pattern& p, std::uint64_t work_guard) {
    TreeForm t = formulate_tree(p);
    Count ordered = ordered_embedding_count(g, t, work_guard);
    Count sigma = static_cast<Count>(t.sigma);
    if (ordered % sigma != 0)
        throw std::logic_error("ordered embedding count not divisible by sigma");
    return ordered / sigma;
}

Count star_count(const Graph& g, int k, StarMode mode) {
    if (k < 1) throw UsageError("star size k must be >= 1");
    Count total = 0;
    for (std::uint32_t i = 0; i < g.n(); ++i) {
        Count d = static_cast<Count>(g.degree(i));
        Count term = 1;
        for (int s = 0; s < k; ++s) term *= (d - s);
        if (d < k) term = 0;  // a zero factor appears at s = d
        if (mode == StarMode::distinct) {
            Count fact = 1;
            for (int s = 2; s <= k; ++s) fact *= s;
            term /= fact;
        }
        total += term;
    }
    return total;
}

Count marked_pattern_count(const Graph& g, const TreeForm& t, const MarkVector& marks) {
    if (marks.size() != g.n())
        throw UsageError("mark vector length must equal the node count");
    for (auto m : marks)
        if (m > t.k) throw UsageError("mark value exceeds k");
    return count_embeddings(
        g, t, [&](std::uint32_t root) { return marks[root] == t.k; },
        [&](int subscript, std::uint32_t cand) { return marks[cand] == subscript; });
}

}  // namespace ldpgc
