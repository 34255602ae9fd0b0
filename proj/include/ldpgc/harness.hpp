#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldpgc/estimate.hpp"
#include "ldpgc/graph.hpp"
#include "ldpgc/mech_marked.hpp"

namespace ldpgc {

enum class Mechanism { walk_basic, walk_opt, path, pattern, star, rr };

std::string mechanism_name(Mechanism m);
Mechanism parse_mechanism(const std::string& name);

struct QuerySpec {
    Mechanism mech;
    std::string pattern_spec;        // walk:<k> | path:<k> | star:<k> | edge list
    std::optional<int> root;         // tree root override for pattern queries
    bool distinct = false;
    bool unoriented = false;         // walk orientation correction
    bool noiseless = false;

    std::string canonical() const;   // stable text form (also the seed salt)
    std::string exact_key() const;   // identifies the exact count it needs
};

struct ExperimentPlan {
    std::string dataset;             // file:<path> or er:<N>:<p>
    std::vector<QuerySpec> queries;
    std::vector<double> eps_grid;
    std::vector<int> nrep_grid;
    int trials = 10;
    std::uint64_t master_seed = 0;
    std::string output_path;         // empty -> stdout
    std::string exact_cache_path;    // optional sidecar of precomputed counts
};

// Line format: `dataset er:2000:0.005`, `seed 42`, `trials 10`,
// `eps 0.5 1.0`, `nrep 1 2`, `query path path:4 distinct`, `output out.csv`,
// `exact-cache counts.txt`; '#' starts a comment.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan parse_plan_file(const std::string& path);

struct ReportRow {
    std::string dataset;
    std::string query;
    std::string mechanism;
    double eps = 0;
    int n_rep = 1;
    int trials = 0;
    bool trimmed = false;
    std::optional<double> rel_err_pct;
    std::optional<double> exact;
    double mean_estimate = 0;
    double bytes_node_to_node = 0;
    double bytes_node_to_analyzer = 0;
    double bytes_analyzer_to_node = 0;
    double bytes_total = 0;
    int rounds = 0;
    double wall_ms_median = 0;
};

// Drop the top and bottom 2 of exactly 10 values and average the middle 6;
// any other count falls back to the plain mean and clears `trimmed`.
double report_average(std::vector<double> values, bool& trimmed);

Graph load_dataset(const std::string& spec, std::uint64_t seed);

// Exact count for a query if the oracle guard admits it or the cache has it.
std::optional<double> resolve_exact(const Graph& g, const QuerySpec& q,
                                    const std::string& cache_path,
                                    std::uint64_t work_guard = kDefaultPathWorkGuard);

// One mechanism trial; all randomness keys off (cell_seed, trial).
Estimate run_query_trial(const Graph& g, const QuerySpec& q, double eps, int n_rep,
                         std::uint64_t cell_seed, std::uint64_t trial);

std::vector<ReportRow> run_plan(const ExperimentPlan& plan);

// Rows for the same pattern under several tree roots, sharing one exact count.
std::vector<ReportRow> compare_trees(const std::string& dataset, const std::string& pattern,
                                     const std::vector<int>& roots, double eps, int trials,
                                     int n_rep, std::uint64_t master_seed);

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);

}  // namespace ldpgc
