#include <cmath>

#include "doctest.h"
#include "ldpgc/error.hpp"
#include "ldpgc/privacy.hpp"

using namespace ldpgc;

TEST_CASE("laplace degenerate and error cases") {
    RngStream rng(1, 0, 0, 0, 0);
    CHECK(laplace(0.0, rng) == 0.0);
    CHECK_THROWS_AS(laplace(-1.0, rng), UsageError);
}

TEST_CASE("laplace empirical mean and variance") {
    const double b = 2.5;
    const int n = 1'000'000;
    RngStream rng(42, 0, 0, 0, 1);
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < n; ++i) {
        double v = laplace(b, rng);
        sum += v;
        sum_sq += v * v;
    }
    double mean = sum / n;
    double var = sum_sq / n - mean * mean;
    CHECK(std::fabs(mean) < 5.0 * b / 1000.0);
    CHECK(var == doctest::Approx(2 * b * b).epsilon(0.02));
}

TEST_CASE("randomized response keep probability") {
    CHECK(rr_keep_probability(std::log(3.0)) == doctest::Approx(0.75));
    CHECK_THROWS_AS(rr_keep_probability(0.0), UsageError);
}

TEST_CASE("high budget keeps every bit") {
    RngStream rng(7, 0, 0, 0, 0);
    std::vector<std::uint8_t> bits(10'000);
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = i % 2;
    auto out = rr_perturb(bits, 50.0, rng);
    CHECK(out == bits);
}

TEST_CASE("empirical flip rate at eps=1") {
    const int n = 1'000'000;
    RngStream rng(5, 0, 0, 0, 0);
    std::vector<std::uint8_t> bits(n, 1);
    auto out = rr_perturb(bits, 1.0, rng);
    int flips = 0;
    for (int i = 0; i < n; ++i) flips += out[i] != bits[i];
    double q = 1.0 / (std::exp(1.0) + 1.0);
    double sd = std::sqrt(n * q * (1 - q));
    CHECK(std::fabs(flips - n * q) <= 3 * sd);
}

TEST_CASE("unbiasing maps reports to the stated estimators") {
    double eps = std::log(3.0);
    CHECK(rr_unbias(1, eps) == doctest::Approx(1.5));
    CHECK(rr_unbias(0, eps) == doctest::Approx(-0.5));
}

TEST_CASE("unbiasing recovers the true bit in expectation") {
    const int n = 1'000'000;
    const double eps = 1.0;
    for (int truth : {0, 1}) {
        RngStream rng(11 + truth, 0, 0, 0, 0);
        std::vector<std::uint8_t> bits(n, static_cast<std::uint8_t>(truth));
        auto out = rr_perturb(bits, eps, rng);
        double sum = 0, sum_sq = 0;
        for (int i = 0; i < n; ++i) {
            double v = rr_unbias(out[i], eps);
            sum += v;
            sum_sq += v * v;
        }
        double mean = sum / n;
        double se = std::sqrt((sum_sq / n - mean * mean) / n);
        CHECK(std::fabs(mean - truth) <= 3 * se);
    }
}

TEST_CASE("accountant composition rules") {
    const double eps = 1.0;
    const int k = 4;

    PrivacyAccountant walk;
    for (int node = 0; node < 3; ++node)
        for (int round = 1; round <= k; ++round)
            walk.charge(node, round, eps / k, Composition::basic);
    CHECK_NOTHROW(walk.assert_total(eps));

    PrivacyAccountant path;
    for (int node = 0; node < 3; ++node) path.charge(node, 1, eps, Composition::parallel);
    CHECK_NOTHROW(path.assert_total(eps));

    PrivacyAccountant overspent;
    overspent.charge(2, 1, eps, Composition::basic);
    overspent.charge(2, 3, eps, Composition::basic);
    CHECK_THROWS_WITH_AS(overspent.assert_total(eps), doctest::Contains("node 2"),
                         AccountingError);
}

TEST_CASE("parallel charges in separate scopes compose basically") {
    PrivacyAccountant acct;
    const int reps = 4;
    for (int r = 0; r < reps; ++r) {
        acct.charge(0, 1, 1.0 / reps, Composition::parallel);
        acct.new_scope();
    }
    CHECK_NOTHROW(acct.assert_total(1.0));
    CHECK(acct.max_effective_total() == doctest::Approx(1.0));

    PrivacyAccountant doubled;
    doubled.charge(0, 1, 1.0, Composition::parallel);
    doubled.new_scope();
    doubled.charge(0, 2, 1.0, Composition::parallel);
    CHECK_THROWS_AS(doubled.assert_total(1.0), AccountingError);
}

TEST_CASE("identical keys replay identical streams") {
    RngStream a(3, 14, 1, 5, 9);
    RngStream b(3, 14, 1, 5, 9);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());
    RngStream c(3, 14, 1, 5, 10);
    bool any_diff = false;
    RngStream a2(3, 14, 1, 5, 9);
    for (int i = 0; i < 64; ++i) any_diff |= (a2.next_u64() != c.next_u64());
    CHECK(any_diff);
}
