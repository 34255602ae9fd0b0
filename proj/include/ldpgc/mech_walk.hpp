#pragma once
#include <cstdint>

#include "ldpgc/estimate.hpp"
#include "ldpgc/graph.hpp"
#include "ldpgc/netsim.hpp"
#include "ldpgc/privacy.hpp"

namespace ldpgc {

struct WalkRunConfig {
    int k = 2;                  // walk length, >= 2
    double eps = 1.0;           // total budget
    bool noiseless = false;     // replace every Laplace draw with 0
    bool unoriented = false;    // apply the reversal correction
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    bool capture_transcript = false;
    Transcript* transcript_out = nullptr;        // optional
    PrivacyAccountant* accountant = nullptr;     // optional external hook
};

// k-round mechanism with all-to-all value visibility; every node reads the
// full previous-round vector and computes the maximum itself.
Estimate run_walk_basic(const Graph& g, const WalkRunConfig& cfg);

// (k-1)-round variant: values travel only to neighbors plus the analyzer,
// which broadcasts the round maximum; the final edge is folded into a noisy
// degree factor at round k-1.
Estimate run_walk_opt(const Graph& g, const WalkRunConfig& cfg);

enum class WalkVariant { basic, opt };
Estimate run_walk(const Graph& g, WalkVariant variant, const WalkRunConfig& cfg);

}  // namespace ldpgc
