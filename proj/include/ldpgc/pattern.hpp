#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ldpgc {

// Connected acyclic pattern: k edges over vertex labels 0..k.
struct Pattern {
    int vertex_count = 0;  // k+1
    std::vector<std::pair<int, int>> edges;

    int k() const { return static_cast<int>(edges.size()); }
    std::vector<std::vector<int>> adjacency() const;
};

// Rooted, post-ordered tree formulation of a pattern. Subscripts run 0..k;
// every child subscript is strictly below its parent's and the root gets k.
struct TreeForm {
    Pattern pattern;
    int k = 0;
    int root_vertex = 0;
    std::vector<int> subscript_of_vertex;      // pattern label -> subscript
    std::vector<int> vertex_of_subscript;      // inverse permutation
    std::vector<int> parent;                   // subscript -> parent subscript, -1 at root
    std::vector<std::vector<int>> children;    // subscript -> child subscripts, ascending
    std::vector<bool> leaf;                    // subscript -> is leaf
    std::vector<int> subtree_edges;            // subscript -> edge count of its subtree
    std::uint64_t sigma = 1;                   // automorphism count of the pattern

    int leaf_count() const;
};

// Builds the pattern for `path:k`: vertices 0..k chained in label order.
Pattern make_path_pattern(int k);
// Builds the pattern for `star:k`: center 0 with leaves 1..k.
Pattern make_star_pattern(int k);

// Validates an explicit edge list (no self-loops/duplicates, connected,
// acyclic, k <= 10); throws UsageError naming the violated property.
Pattern make_pattern(int vertex_count, std::vector<std::pair<int, int>> edges);

// Parse target grammar: walk:<k> | path:<k> | star:<k> | "a-b,b-c,...".
// `walk` is a counting target rather than a subgraph, so it carries no Pattern.
struct ParsedPatternSpec {
    enum class Kind { walk, path, star, custom };
    Kind kind;
    int k;
    std::optional<Pattern> pattern;  // absent for walk
};

ParsedPatternSpec parse_pattern_spec(const std::string& text);

// Convenience: parse and require an actual pattern (rejects walk:<k>).
Pattern parse_pattern(const std::string& text);

// DFS post-order rooted at `root` (default: max-degree vertex, smallest label
// on ties), children visited in ascending label order.
TreeForm formulate_tree(const Pattern& p, std::optional<int> root = std::nullopt);

// Number of edge-preserving vertex bijections, computed from canonical
// rooted encodings at the tree centroid(s). Independent of any TreeForm.
std::uint64_t automorphism_count(const Pattern& p);

// Protocol rounds for a formulation, marking round included: k + 2 - |L|.
int round_count(const TreeForm& t);

}  // namespace ldpgc
