#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "ldpgc/error.hpp"
#include "ldpgc/graph.hpp"

using namespace ldpgc;

TEST_CASE("triangle edge list") {
    std::istringstream in("0 1\n1 2\n2 0");
    Graph g = load_edge_list(in);
    CHECK(g.n() == 3);
    CHECK(g.m() == 3);
    CHECK(g.has_edge(0, 2));
}

TEST_CASE("comments, self-loops, duplicates, compaction") {
    std::istringstream in("# c\n5 5\n5 7\n7 5");
    Graph g = load_edge_list(in);
    CHECK(g.n() == 2);  // ids 5,7 compacted in first-appearance order
    CHECK(g.m() == 1);
    CHECK(g.degree(0) == 1);
}

TEST_CASE("isolated node from dropped self-loop is retained") {
    std::istringstream in("3 3\n0 1");
    Graph g = load_edge_list(in);
    CHECK(g.n() == 3);
    CHECK(g.degree(0) == 0);  // node 3 appeared first, compacted to index 0
    CHECK(g.m() == 1);
}

TEST_CASE("malformed input errors carry line numbers") {
    std::istringstream bad("0 1\nx 2\n");
    CHECK_THROWS_WITH_AS(load_edge_list(bad), doctest::Contains("line 2"), IoError);
    std::istringstream empty("# only comments\n");
    CHECK_THROWS_AS(load_edge_list(empty), IoError);
    std::istringstream missing("0\n");
    CHECK_THROWS_WITH_AS(load_edge_list(missing), doctest::Contains("line 1"), IoError);
}

TEST_CASE("erdos-renyi generator") {
    Graph k4 = gen_erdos_renyi(4, 1.0, 9);
    CHECK(k4.m() == 6);
    CHECK(k4.max_degree() == 3);
    Graph empty = gen_erdos_renyi(10, 0.0, 9);
    CHECK(empty.m() == 0);
    Graph a = gen_erdos_renyi(100, 0.05, 7);
    Graph b = gen_erdos_renyi(100, 0.05, 7);
    CHECK(a.m() == b.m());
    for (std::uint32_t i = 0; i < 100; ++i) CHECK(a.neighbors(i) == b.neighbors(i));
    CHECK_THROWS_AS(gen_erdos_renyi(5, 1.5, 0), UsageError);
}

TEST_CASE("degree queries and bounds") {
    Graph k4 = gen_erdos_renyi(4, 1.0, 1);
    CHECK(k4.degree(2) == 3);
    std::istringstream in("0 1\n1 2");
    Graph path = load_edge_list(in);
    CHECK(path.degree(1) == 2);
    CHECK(path.degree(0) == 1);
    CHECK(path.max_degree() == 2);
    CHECK_THROWS_AS(path.degree(3), UsageError);
    CHECK_THROWS_AS(path.neighbors(17), UsageError);
}

TEST_CASE("neighbors sorted ascending") {
    Graph g = gen_erdos_renyi(60, 0.2, 3);
    for (std::uint32_t i = 0; i < g.n(); ++i) {
        const auto& nbrs = g.neighbors(i);
        CHECK(std::is_sorted(nbrs.begin(), nbrs.end()));
    }
}

// Real-world checks; set the env vars to edge-list files to enable.
TEST_CASE("snap twitter dimensions" *
          doctest::skip(std::getenv("LDPGC_SNAP_TWITTER") == nullptr)) {
    Graph g = load_edge_list_file(std::getenv("LDPGC_SNAP_TWITTER"));
    CHECK(g.n() == 81306);
    CHECK(g.m() == 1342310);
}

TEST_CASE("snap astroph max degree" *
          doctest::skip(std::getenv("LDPGC_SNAP_ASTROPH") == nullptr)) {
    Graph g = load_edge_list_file(std::getenv("LDPGC_SNAP_ASTROPH"));
    CHECK(g.n() == 18772);
    CHECK(g.max_degree() == 504);
}

TEST_CASE("load-serialize round trip is idempotent on the compacted form") {
    Graph g = gen_erdos_renyi(40, 0.15, 11);
    auto round_trip = [](const Graph& in) {
        std::ostringstream text;
        in.write_edge_list(text);
        std::istringstream back(text.str());
        return load_edge_list(back);
    };
    Graph once = round_trip(g);
    Graph twice = round_trip(once);
    REQUIRE(twice.n() == once.n());
    CHECK(twice.m() == once.m());
    for (std::uint32_t i = 0; i < once.n(); ++i)
        CHECK(twice.neighbors(i) == once.neighbors(i));
}
