#include <sstream>

#include "brute_force.hpp"
#include "doctest.h"
#include "ldpgc/error.hpp"
#include "ldpgc/oracle.hpp"
#include "ldpgc/rng.hpp"

using namespace ldpgc;

namespace {

Graph triangle() {
    std::istringstream in("0 1\n1 2\n2 0");
    return load_edge_list(in);
}

Graph path3() {
    std::istringstream in("0 1\n1 2");
    return load_edge_list(in);
}

Graph star3() {
    std::istringstream in("0 1\n0 2\n0 3");
    return load_edge_list(in);
}

}  // namespace

TEST_CASE("oriented walk counts") {
    CHECK(walk_count_oriented(triangle(), 2) == 12);
    CHECK(walk_count_oriented(triangle(), 2) == bf::walk_oriented(triangle(), 2));
    CHECK(walk_count_oriented(path3(), 2) == bf::walk_oriented(path3(), 2));
    CHECK(walk_count_oriented(gen_erdos_renyi(6, 0.0, 1), 3) == 0);
    CHECK_THROWS_AS(walk_count_oriented(triangle(), 31), UsageError);
}

TEST_CASE("unoriented walk counts") {
    CHECK(walk_count_unoriented(triangle(), 2) == 9);  // (12 + W_1)/2 with W_1 = 6
    Graph g = gen_erdos_renyi(7, 0.4, 5);
    CHECK(walk_count_unoriented(g, 1) == static_cast<Count>(g.m()));
    CHECK(walk_count_unoriented(star3(), 2) == bf::walk_unoriented(star3(), 2));
    CHECK(walk_count_unoriented(g, 3) == bf::walk_unoriented(g, 3));
    CHECK(walk_count_unoriented(g, 4) == bf::walk_unoriented(g, 4));
}

TEST_CASE("oriented path counts") {
    CHECK(path_count_oriented(triangle(), 2) == 6);
    CHECK(path_count_oriented(path3(), 2) == 2);
    CHECK(path_count_oriented(gen_erdos_renyi(4, 1.0, 1), 3) == 24);
    Graph big = gen_erdos_renyi(200, 0.5, 1);
    CHECK_THROWS_AS(path_count_oriented(big, 6), SizeGuardError);
}

TEST_CASE("pattern counts") {
    CHECK(pattern_count(star3(), parse_pattern("star:3")) == 1);
    CHECK(pattern_count(gen_erdos_renyi(4, 1.0, 1), parse_pattern("path:3")) == 12);
    CHECK(pattern_count(triangle(), parse_pattern("path:2")) == 3);
}

TEST_CASE("star counts") {
    CHECK(star_count(star3(), 3, StarMode::ordered) == 6);
    CHECK(star_count(star3(), 3, StarMode::distinct) == 1);
    Graph k4 = gen_erdos_renyi(4, 1.0, 1);
    CHECK(star_count(k4, 2, StarMode::distinct) == 12);
    CHECK(star_count(k4, 2, StarMode::ordered) == 24);
    CHECK(star_count(path3(), 5, StarMode::ordered) == 0);
}

TEST_CASE("marked pattern counts") {
    Pattern p2 = parse_pattern("path:2");
    TreeForm t = formulate_tree(p2, 2);

    MarkVector zeros(path3().n(), 0);
    CHECK(marked_pattern_count(path3(), t, zeros) == 0);

    MarkVector ordered = {0, 1, 2};
    CHECK(marked_pattern_count(path3(), t, ordered) == 1);

    Graph g = gen_erdos_renyi(8, 0.5, 3);
    Pattern p3 = parse_pattern("path:3");
    TreeForm t3 = formulate_tree(p3, 3);
    RngStream rng(99, 0, 0, 0, 0);
    MarkVector random_marks(g.n());
    for (auto& m : random_marks) m = static_cast<std::uint8_t>(rng.uniform_below(4));
    CHECK(marked_pattern_count(g, t3, random_marks) ==
          bf::marked_embeddings(g, t3, random_marks));
}

TEST_CASE("walk recursion equals tuple enumeration on small graphs") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Graph g = gen_erdos_renyi(5 + seed % 4, 0.45, seed);
        for (int k = 1; k <= 4; ++k)
            CHECK(walk_count_oriented(g, k) == bf::walk_oriented(g, k));
    }
}

TEST_CASE("cross-oracle identities") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = gen_erdos_renyi(7, 0.4, seed + 20);
        for (int k = 2; k <= 3; ++k) {
            CHECK(pattern_count(g, make_path_pattern(k)) ==
                  path_count_oriented(g, k) / 2);
            CHECK(pattern_count(g, make_star_pattern(k)) ==
                  star_count(g, k, StarMode::distinct));
        }
    }
}

TEST_CASE("marked counts sum to ordered embeddings over all mark vectors") {
    Graph g = gen_erdos_renyi(5, 0.6, 7);
    for (const char* spec : {"path:2", "path:3", "star:3"}) {
        Pattern p = parse_pattern(spec);
        TreeForm t = formulate_tree(p);
        int k = p.k();
        Count total = 0;
        MarkVector marks(g.n(), 0);
        std::uint64_t combos = 1;
        for (std::size_t i = 0; i < g.n(); ++i) combos *= (k + 1);
        for (std::uint64_t code = 0; code < combos; ++code) {
            std::uint64_t c = code;
            for (std::size_t i = 0; i < g.n(); ++i) {
                marks[i] = static_cast<std::uint8_t>(c % (k + 1));
                c /= (k + 1);
            }
            total += marked_pattern_count(g, t, marks);
        }
        // every embedding is hit once per assignment of the N-(k+1) spare marks
        Count spare = 1;
        for (std::size_t i = k + 1; i < g.n(); ++i) spare *= (k + 1);
        CHECK(total == ordered_embedding_count(g, t) * spare);
        CHECK(total == pattern_count(g, p) * static_cast<Count>(t.sigma) * spare);
    }
}
