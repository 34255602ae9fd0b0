#pragma once
#include <cstdint>
#include <vector>

#include "ldpgc/rng.hpp"

namespace ldpgc {

// Zero-mean Laplace sample via inverse CDF; scale 0 returns exactly 0, which
// is the correct degenerate draw when a published round maximum is 0.
double laplace(double scale, RngStream& rng);

// Randomized response over a bit vector: each bit kept with p = e^eps/(e^eps+1).
std::vector<std::uint8_t> rr_perturb(const std::vector<std::uint8_t>& bits, double eps,
                                     RngStream& rng);

// Unbiased estimator (bit - q)/(p - q) for the true bit behind one RR report.
double rr_unbias(int bit, double eps);
double rr_keep_probability(double eps);

enum class Composition { basic, parallel };

// Per-node, per-round budget ledger for one trial. Scopes separate repeated
// mechanism executions: within a scope, basic entries add up and parallel
// entries count once at their maximum; scopes compose basically.
class PrivacyAccountant {
public:
    void charge(std::int64_t node, int round, double eps, Composition comp);
    void new_scope() { ++scope_; }

    // Throws AccountingError naming node and round if any node's effective
    // total exceeds eps_total (modulo fp slack).
    void assert_total(double eps_total) const;

    double max_effective_total() const;

private:
    struct Entry {
        std::int64_t node;
        int round;
        double eps;
        Composition comp;
        int scope;
    };
    std::vector<Entry> entries_;
    int scope_ = 0;
};

}  // namespace ldpgc
