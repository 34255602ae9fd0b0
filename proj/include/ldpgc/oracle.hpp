#pragma once
#include <cstdint>
#include <vector>

#include "ldpgc/count.hpp"
#include "ldpgc/graph.hpp"
#include "ldpgc/pattern.hpp"

namespace ldpgc {

// Per-node marks in {0..k}; index i holds the mark of node i.
using MarkVector = std::vector<std::uint8_t>;

inline constexpr std::uint64_t kDefaultPathWorkGuard = 1'000'000'000ULL;

// Exact oriented k-line walk count via the noiseless neighbor-sum recursion.
Count walk_count_oriented(const Graph& g, int k);

// Walks deduplicated under reversal: odd k -> W_k/2, even k -> (W_k + W_{k/2})/2.
Count walk_count_unoriented(const Graph& g, int k);

// Oriented simple-path count by DFS enumeration; guarded by N*d(G)^k <= work_guard.
Count path_count_oriented(const Graph& g, int k,
                          std::uint64_t work_guard = kDefaultPathWorkGuard);

// Distinct pattern instances: ordered tree embeddings divided by sigma.
Count pattern_count(const Graph& g, const Pattern& p,
                    std::uint64_t work_guard = kDefaultPathWorkGuard);

// Ordered embeddings consistent with a tree formulation (injective, edge
// respecting); equals pattern_count * sigma.
Count ordered_embedding_count(const Graph& g, const TreeForm& t,
                              std::uint64_t work_guard = kDefaultPathWorkGuard);

enum class StarMode { ordered, distinct };

// ordered: sum of falling factorials (d_i)_k; distinct: sum of C(d_i, k).
Count star_count(const Graph& g, int k, StarMode mode);

// Embeddings where the node mapped to subscript l carries mark l. This is the
// deterministic reference for noiseless marking-mechanism runs.
Count marked_pattern_count(const Graph& g, const TreeForm& t, const MarkVector& marks);

}  // namespace ldpgc
