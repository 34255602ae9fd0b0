#pragma once
#include <cstdint>
#include <optional>

#include "ldpgc/estimate.hpp"
#include "ldpgc/graph.hpp"
#include "ldpgc/netsim.hpp"
#include "ldpgc/pattern.hpp"
#include "ldpgc/privacy.hpp"

namespace ldpgc {

struct MarkedRunConfig {
    double eps = 1.0;
    int n_rep = 1;
    bool noiseless = false;
    bool distinct = false;  // divide by orientation / automorphism redundancy
    std::optional<MarkVector> fixed_marks;  // test hook; marking messages still run
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    std::uint64_t rep = 0;
    bool capture_transcript = false;
    Transcript* transcript_out = nullptr;
    PrivacyAccountant* accountant = nullptr;
};

// Analyzer-side rescale (k+1)^{k+1}/divisor, evaluated in double precision.
double marking_rescale(int k, double divisor);

// Draws the per-node marks; depends only on (n, k) and the rng keys, never on
// the graph, so publishing marks costs no budget.
MarkVector sample_marks(std::size_t n, int k, std::uint64_t seed, std::uint64_t trial,
                        std::uint64_t rep);

// k-round path mechanism: marking round, then rounds 1..k-1 where only nodes
// marked l participate in round l; round k-1 folds in the final edge through
// a noisy count of k-marked neighbors.
Estimate run_path(const Graph& g, int k, const MarkedRunConfig& cfg);

// General acyclic pattern mechanism over a tree formulation; runs the marking
// round plus one round per internal subscript (k + 2 - |L| in total).
Estimate run_pattern(const Graph& g, const TreeForm& t, const MarkedRunConfig& cfg);

// One-round k-star mechanism from noisy degrees; cfg.distinct divides by k!.
// Biased for k >= 2 (even Laplace moments), so callers should judge it by its
// error bound rather than by unbiasedness.
Estimate run_star(const Graph& g, int k, const MarkedRunConfig& cfg);

struct MarkedQuery {
    enum class Mech { path, pattern, star };
    Mech mech;
    int k = 0;
    std::optional<TreeForm> tree;  // for Mech::pattern

    static MarkedQuery make_path(int k) { return {Mech::path, k, std::nullopt}; }
    static MarkedQuery make_pattern(TreeForm t);
    static MarkedQuery make_star(int k) { return {Mech::star, k, std::nullopt}; }
};

// Runs the query cfg.n_rep times at budget eps/n_rep with fresh marks and
// returns the mean; communication accumulates, budgets compose basically.
Estimate run_with_reps(const Graph& g, const MarkedQuery& query, MarkedRunConfig cfg);

struct ErrorDecomposition {
    double sampling_rel_err = 0;  // |noiseless - exact| / exact, averaged
    double dp_rel_err = 0;        // |dp - noiseless| / exact, averaged
    double total_rel_err = 0;     // |dp - exact| / exact, averaged
    bool trimmed = false;         // top/bottom-2 trim applied (exactly 10 trials)
};

// Per trial, pairs each DP run with a noiseless replica under identical marks.
ErrorDecomposition error_decompose(const Graph& g, const MarkedQuery& query,
                                   const MarkedRunConfig& cfg, int trials, double exact);

}  // namespace ldpgc
