#include "ldpgc/baseline_rr.hpp"

#include <cmath>

#include "ldpgc/error.hpp"
#include "ldpgc/privacy.hpp"
#include "ldpgc/rng.hpp"

namespace ldpgc {

std::size_t NoisyGraphEstimates::pair_index(std::uint32_t i, std::uint32_t j) const {
    if (i > j) std::swap(i, j);
    // pairs (i,j) with i<j, ordered by reporter i then j
    std::size_t base = static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2;
    return base + (j - i - 1);
}

double NoisyGraphEstimates::estimate(std::uint32_t i, std::uint32_t j) const {
    return bits[pair_index(i, j)] ? one_value : zero_value;
}

namespace {

NoisyGraphEstimates make_base(const Graph& g) {
    if (g.n() > kMaxRrNodes)
        throw SizeGuardError("randomized-response baseline capped at N <= " +
                             std::to_string(kMaxRrNodes));
    NoisyGraphEstimates est;
    est.n = g.n();
    est.bits.assign(g.n() * (g.n() - 1) / 2, 0);
    for (std::uint32_t i = 0; i < g.n(); ++i)
        for (std::uint32_t j : g.neighbors(i))
            if (i < j) est.bits[est.pair_index(i, j)] = 1;
    return est;
}

void charge_payload(NoisyGraphEstimates& est) {
    // one bit per unordered pair, total rounded up to bytes
    std::uint64_t pairs = est.n * (est.n - 1) / 2;
    est.ledger.bytes_node_to_analyzer += (pairs + 7) / 8;
    est.ledger.msgs_node_to_analyzer += est.n;  // one report message per node
}

}  // namespace

NoisyGraphEstimates build_noisy_graph(const Graph& g, double eps, std::uint64_t seed,
                                      std::uint64_t trial) {
    NoisyGraphEstimates est = make_base(g);
    est.eps = eps;
    double p = rr_keep_probability(eps);
    for (std::uint32_t i = 0; i + 1 < g.n(); ++i) {
        // node i reports the pairs (i, j) for j > i
        RngStream rng(seed, trial, 0, i, 1);
        std::size_t base = est.pair_index(i, i + 1);
        for (std::uint32_t j = i + 1; j < g.n(); ++j) {
            std::size_t idx = base + (j - i - 1);
            bool keep = rng.uniform01() < p;
            if (!keep) est.bits[idx] ^= 1;
        }
    }
    est.one_value = rr_unbias(1, eps);
    est.zero_value = rr_unbias(0, eps);
    charge_payload(est);
    return est;
}

NoisyGraphEstimates build_noisy_graph_exact(const Graph& g) {
    NoisyGraphEstimates est = make_base(g);
    est.exact = true;
    est.one_value = 1.0;
    est.zero_value = 0.0;
    charge_payload(est);
    return est;
}

RrTarget RrTarget::from_pattern(Pattern p) {
    RrTarget t;
    t.kind = Kind::pattern;
    t.k = p.k();
    t.pattern = std::move(p);
    return t;
}

namespace {

// Product over the distinct edges of an ordered tuple; each revisited edge
// contributes its estimator exactly once.
struct DistinctEdgeProduct {
    const NoisyGraphEstimates& est;
    std::array<std::size_t, 16> seen{};
    int count = 0;
    double value = 1.0;

    explicit DistinctEdgeProduct(const NoisyGraphEstimates& e) : est(e) {}

    void push(std::uint32_t a, std::uint32_t b) {
        std::size_t idx = est.pair_index(a, b);
        for (int s = 0; s < count; ++s)
            if (seen[s] == idx) return;
        seen[count++] = idx;
        value *= est.bits[idx] ? est.one_value : est.zero_value;
    }
};

}  // namespace

Estimate rr_count(const NoisyGraphEstimates& est, const RrTarget& target, bool distinct) {
    const int k = target.k;
    if (k < 1) throw UsageError("rr_count needs k >= 1");
    const std::size_t n = est.n;
    double tuples = std::pow(static_cast<double>(n), k + 1);
    if (tuples > 1e9)
        throw SizeGuardError("rr enumeration guard exceeded (N^(k+1) > 1e9)");

    double divisor = 1.0;
    const Pattern* pattern = nullptr;
    if (target.kind == RrTarget::Kind::pattern) {
        pattern = &*target.pattern;
        divisor = distinct ? static_cast<double>(automorphism_count(*pattern)) : 1.0;
    } else {
        divisor = distinct ? 2.0 : 1.0;  // orientation redundancy
    }

    double total = 0.0;
    std::vector<std::uint32_t> tuple(k + 1, 0);
    const std::uint64_t limit = [&] {
        std::uint64_t t = 1;
        for (int i = 0; i <= k; ++i) t *= n;
        return t;
    }();
    for (std::uint64_t code = 0; code < limit; ++code) {
        std::uint64_t c = code;
        for (int i = 0; i <= k; ++i) {
            tuple[i] = static_cast<std::uint32_t>(c % n);
            c /= n;
        }
        if (target.kind == RrTarget::Kind::walk) {
            bool ok = true;
            for (int i = 0; i < k; ++i)
                if (tuple[i] == tuple[i + 1]) {  // no self-loop steps
                    ok = false;
                    break;
                }
            if (!ok) continue;
            DistinctEdgeProduct prod(est);
            for (int i = 0; i < k; ++i) prod.push(tuple[i], tuple[i + 1]);
            total += prod.value;
        } else {
            bool ok = true;
            for (int i = 0; i <= k && ok; ++i)
                for (int j = i + 1; j <= k; ++j)
                    if (tuple[i] == tuple[j]) {  // paths and patterns need distinct nodes
                        ok = false;
                        break;
                    }
            if (!ok) continue;
            DistinctEdgeProduct prod(est);
            if (target.kind == RrTarget::Kind::path) {
                for (int i = 0; i < k; ++i) prod.push(tuple[i], tuple[i + 1]);
            } else {
                for (auto [a, b] : pattern->edges) prod.push(tuple[a], tuple[b]);
            }
            total += prod.value;
        }
    }

    Estimate out;
    out.value = total / divisor;
    out.eps_spent = est.exact ? 0.0 : est.eps;
    out.ledger = est.ledger;
    out.rounds = 1;
    return out;
}

}  // namespace ldpgc
