#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "ldpgc/estimate.hpp"
#include "ldpgc/graph.hpp"
#include "ldpgc/netsim.hpp"
#include "ldpgc/pattern.hpp"

namespace ldpgc {

inline constexpr std::size_t kMaxRrNodes = 4000;

// Upper-triangular randomized-response edge reports with their unbiased
// per-pair estimators. For pair (i,j) with i<j the reporter is node i.
struct NoisyGraphEstimates {
    std::size_t n = 0;
    double eps = 0;
    bool exact = false;               // eps -> infinity modeled as no flips
    std::vector<std::uint8_t> bits;   // reported bit per pair, row-major i<j
    double one_value = 1;             // rr_unbias(1, eps)
    double zero_value = 0;            // rr_unbias(0, eps)
    CommLedger ledger;

    std::size_t pair_index(std::uint32_t i, std::uint32_t j) const;
    double estimate(std::uint32_t i, std::uint32_t j) const;
};

// One-round noisy-graph construction; ledger carries the payload at one bit
// per node pair, rounded up to whole bytes over the protocol.
NoisyGraphEstimates build_noisy_graph(const Graph& g, double eps, std::uint64_t seed,
                                      std::uint64_t trial);

// No-flip reference used for exact-equivalence tests.
NoisyGraphEstimates build_noisy_graph_exact(const Graph& g);

struct RrTarget {
    enum class Kind { walk, path, pattern };
    Kind kind;
    int k = 0;
    std::optional<Pattern> pattern;

    static RrTarget walk(int k) { return {Kind::walk, k, std::nullopt}; }
    static RrTarget path(int k) { return {Kind::path, k, std::nullopt}; }
    static RrTarget from_pattern(Pattern p);
};

// Enumerates all ordered (k+1)-node tuples and sums per-tuple products of the
// tuple's distinct edge estimators. distinct mode divides by the target's
// orientation/automorphism redundancy.
Estimate rr_count(const NoisyGraphEstimates& est, const RrTarget& target, bool distinct);

}  // namespace ldpgc
