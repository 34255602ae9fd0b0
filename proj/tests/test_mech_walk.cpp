#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ldpgc/error.hpp"
#include "ldpgc/mech_walk.hpp"
#include "ldpgc/oracle.hpp"

using namespace ldpgc;

namespace {

Graph triangle() {
    std::istringstream in("0 1\n1 2\n2 0");
    return load_edge_list(in);
}

WalkRunConfig noiseless_cfg(int k) {
    WalkRunConfig cfg;
    cfg.k = k;
    cfg.eps = 1.0;
    cfg.noiseless = true;
    return cfg;
}

}  // namespace

TEST_CASE("noiseless runs equal the oracle recursion") {
    CHECK(run_walk_basic(triangle(), noiseless_cfg(2)).value == 12.0);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        Graph g = gen_erdos_renyi(40 + 20 * seed, 0.08, seed);
        for (int k : {2, 3, 5}) {
            double expected = count_to_double(walk_count_oriented(g, k));
            CHECK(run_walk_basic(g, noiseless_cfg(k)).value == expected);
            CHECK(run_walk_opt(g, noiseless_cfg(k)).value == expected);
        }
    }
}

TEST_CASE("config validation") {
    WalkRunConfig bad;
    bad.k = 1;
    CHECK_THROWS_AS(run_walk_basic(triangle(), bad), UsageError);
    WalkRunConfig no_eps;
    no_eps.k = 2;
    no_eps.eps = 0;
    CHECK_THROWS_AS(run_walk_opt(triangle(), no_eps), UsageError);
}

TEST_CASE("unoriented corrections in noiseless mode") {
    CHECK(run_walk_basic(triangle(), [] {
              auto c = noiseless_cfg(2);
              c.unoriented = true;
              return c;
          }()).value == 9.0);
    Graph g = gen_erdos_renyi(30, 0.2, 17);
    for (int k : {3, 5}) {  // odd k halves the oriented count
        auto cfg = noiseless_cfg(k);
        cfg.unoriented = true;
        double expected = count_to_double(walk_count_oriented(g, k)) / 2;
        CHECK(run_walk_opt(g, cfg).value == expected);
        CHECK(count_to_double(walk_count_unoriented(g, k)) == expected);
    }
    for (int k : {2, 4}) {
        auto cfg = noiseless_cfg(k);
        cfg.unoriented = true;
        double expected = count_to_double(walk_count_unoriented(g, k));
        CHECK(run_walk_basic(g, cfg).value == expected);
        CHECK(run_walk_opt(g, cfg).value == expected);
    }
}

TEST_CASE("monte carlo means match the oracle within 3 standard errors") {
    Graph g = gen_erdos_renyi(50, 0.1, 1);
    const int trials = 10'000;
    auto mc = [&](WalkVariant variant, int k) {
        double exact = count_to_double(walk_count_oriented(g, k));
        double sum = 0, sum_sq = 0;
        for (int t = 0; t < trials; ++t) {
            WalkRunConfig cfg;
            cfg.k = k;
            cfg.eps = 1.0;
            cfg.seed = 77;
            cfg.trial = t;
            double v = run_walk(g, variant, cfg).value;
            sum += v;
            sum_sq += v * v;
        }
        double mean = sum / trials;
        double se = std::sqrt((sum_sq / trials - mean * mean) / trials);
        CHECK(std::fabs(mean - exact) <= 3 * se);
    };
    mc(WalkVariant::basic, 3);
    mc(WalkVariant::opt, 4);
}

TEST_CASE("error bound coverage at beta 0.1") {
    Graph g = gen_erdos_renyi(100, 0.08, 2);
    const int k = 3, trials = 200;
    const double eps = 1.0, beta = 0.1;
    double exact = count_to_double(walk_count_oriented(g, k));
    double n = static_cast<double>(g.n());
    double d = static_cast<double>(g.max_degree());
    double gamma = 2.0 * k * std::sqrt(8.0 * std::log(2.0 * k * n / beta)) / eps;
    double bound = k * gamma * std::sqrt(n) * std::pow(d + gamma, k - 1);
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        WalkRunConfig cfg;
        cfg.k = k;
        cfg.eps = eps;
        cfg.seed = 13;
        cfg.trial = t;
        if (std::fabs(run_walk_opt(g, cfg).value - exact) > bound) ++violations;
    }
    CHECK(violations <= trials * beta);
}

TEST_CASE("accountant passes and budget is reported") {
    Graph g = gen_erdos_renyi(25, 0.3, 3);
    WalkRunConfig cfg;
    cfg.k = 4;
    cfg.eps = 2.0;
    cfg.seed = 6;
    Estimate basic = run_walk_basic(g, cfg);
    CHECK(basic.eps_spent <= 2.0 + 1e-9);
    Estimate opt = run_walk_opt(g, cfg);
    CHECK(opt.eps_spent <= 2.0 + 1e-9);
    CHECK(opt.eps_spent > 0);
}

TEST_CASE("runs are bit-identical under identical keys") {
    Graph g = gen_erdos_renyi(40, 0.15, 9);
    WalkRunConfig cfg;
    cfg.k = 3;
    cfg.eps = 0.5;
    cfg.seed = 21;
    cfg.trial = 4;
    CHECK(run_walk_opt(g, cfg).value == run_walk_opt(g, cfg).value);
    cfg.trial = 5;
    double other = run_walk_opt(g, cfg).value;
    cfg.trial = 4;
    CHECK(run_walk_opt(g, cfg).value != other);
}
