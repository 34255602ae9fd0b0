#include "ldpgc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "ldpgc/baseline_rr.hpp"
#include "ldpgc/error.hpp"
#include "ldpgc/mech_walk.hpp"
#include "ldpgc/oracle.hpp"

namespace ldpgc {

std::string mechanism_name(Mechanism m) {
    switch (m) {
        case Mechanism::walk_basic: return "walk-basic";
        case Mechanism::walk_opt: return "walk-opt";
        case Mechanism::path: return "path";
        case Mechanism::pattern: return "pattern";
        case Mechanism::star: return "star";
        case Mechanism::rr: return "rr";
    }
    return "?";
}

Mechanism parse_mechanism(const std::string& name) {
    if (name == "walk-basic") return Mechanism::walk_basic;
    if (name == "walk-opt" || name == "walk") return Mechanism::walk_opt;
    if (name == "path") return Mechanism::path;
    if (name == "pattern") return Mechanism::pattern;
    if (name == "star") return Mechanism::star;
    if (name == "rr") return Mechanism::rr;
    throw UsageError("unknown mechanism '" + name + "'");
}

std::string QuerySpec::canonical() const {
    std::string s = mechanism_name(mech) + " " + pattern_spec;
    if (root) s += " root=" + std::to_string(*root);
    if (distinct) s += " distinct";
    if (unoriented) s += " unoriented";
    if (noiseless) s += " noiseless";
    return s;
}

std::string QuerySpec::exact_key() const {
    auto spec = parse_pattern_spec(pattern_spec);
    std::string base;
    switch (spec.kind) {
        case ParsedPatternSpec::Kind::walk: base = "walk:" + std::to_string(spec.k); break;
        case ParsedPatternSpec::Kind::path: base = "path:" + std::to_string(spec.k); break;
        case ParsedPatternSpec::Kind::star: base = "star:" + std::to_string(spec.k); break;
        case ParsedPatternSpec::Kind::custom: base = "pattern:" + pattern_spec; break;
    }
    bool dedup = distinct || unoriented;
    return dedup ? base + ":distinct" : base + ":oriented";
}

double report_average(std::vector<double> values, bool& trimmed) {
    if (values.empty()) throw UsageError("report_average: no values");
    trimmed = values.size() == 10;
    if (trimmed) {
        std::sort(values.begin(), values.end());
        values.erase(values.end() - 2, values.end());
        values.erase(values.begin(), values.begin() + 2);
    }
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

Graph load_dataset(const std::string& spec, std::uint64_t seed) {
    if (spec.rfind("file:", 0) == 0) return load_edge_list_file(spec.substr(5));
    if (spec.rfind("er:", 0) == 0) {
        std::string rest = spec.substr(3);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw UsageError("generator spec must look like er:<N>:<p>");
        try {
            std::size_t n = std::stoull(rest.substr(0, colon));
            double p = std::stod(rest.substr(colon + 1));
            return gen_erdos_renyi(n, p, seed);
        } catch (const UsageError&) {
            throw;
        } catch (const std::exception&) {
            throw UsageError("malformed generator spec '" + spec + "'");
        }
    }
    throw UsageError("graph source must be file:<path> or er:<N>:<p>, got '" + spec + "'");
}

namespace {

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::optional<double> cache_lookup(const std::string& cache_path, const std::string& key) {
    if (cache_path.empty()) return std::nullopt;
    std::ifstream in(cache_path);
    if (!in) return std::nullopt;
    std::string k;
    double v;
    while (in >> k >> v)
        if (k == key) return v;
    return std::nullopt;
}

}  // namespace

std::optional<double> resolve_exact(const Graph& g, const QuerySpec& q,
                                    const std::string& cache_path,
                                    std::uint64_t work_guard) {
    if (auto cached = cache_lookup(cache_path, q.exact_key())) return cached;
    auto spec = parse_pattern_spec(q.pattern_spec);
    bool dedup = q.distinct || q.unoriented;
    try {
        switch (spec.kind) {
            case ParsedPatternSpec::Kind::walk:
                return count_to_double(dedup ? walk_count_unoriented(g, spec.k)
                                             : walk_count_oriented(g, spec.k));
            case ParsedPatternSpec::Kind::path: {
                Count oriented = path_count_oriented(g, spec.k, work_guard);
                return count_to_double(dedup ? oriented / 2 : oriented);
            }
            case ParsedPatternSpec::Kind::star:
                return count_to_double(star_count(
                    g, spec.k, dedup ? StarMode::distinct : StarMode::ordered));
            case ParsedPatternSpec::Kind::custom: {
                TreeForm t = formulate_tree(*spec.pattern, q.root);
                Count ordered = ordered_embedding_count(g, t, work_guard);
                return count_to_double(dedup ? ordered / static_cast<Count>(t.sigma)
                                             : ordered);
            }
        }
    } catch (const SizeGuardError&) {
        return std::nullopt;  // row reports exact=NA
    }
    return std::nullopt;
}

Estimate run_query_trial(const Graph& g, const QuerySpec& q, double eps, int n_rep,
                         std::uint64_t cell_seed, std::uint64_t trial) {
    auto spec = parse_pattern_spec(q.pattern_spec);
    switch (q.mech) {
        case Mechanism::walk_basic:
        case Mechanism::walk_opt: {
            if (spec.kind != ParsedPatternSpec::Kind::walk &&
                spec.kind != ParsedPatternSpec::Kind::path)
                throw UsageError("walk mechanisms take a walk:<k> target");
            WalkRunConfig cfg;
            cfg.k = spec.k;
            cfg.eps = eps;
            cfg.noiseless = q.noiseless;
            cfg.unoriented = q.unoriented || q.distinct;
            cfg.seed = cell_seed;
            cfg.trial = trial;
            return run_walk(g, q.mech == Mechanism::walk_basic ? WalkVariant::basic
                                                               : WalkVariant::opt,
                            cfg);
        }
        case Mechanism::path:
        case Mechanism::pattern:
        case Mechanism::star: {
            MarkedRunConfig cfg;
            cfg.eps = eps;
            cfg.n_rep = n_rep;
            cfg.noiseless = q.noiseless;
            cfg.distinct = q.distinct;
            cfg.seed = cell_seed;
            cfg.trial = trial;
            MarkedQuery query = [&] {
                if (q.mech == Mechanism::path) {
                    if (spec.kind != ParsedPatternSpec::Kind::path &&
                        spec.kind != ParsedPatternSpec::Kind::walk)
                        throw UsageError("path mechanism takes a path:<k> target");
                    return MarkedQuery::make_path(spec.k);
                }
                if (q.mech == Mechanism::star) {
                    if (spec.kind != ParsedPatternSpec::Kind::star)
                        throw UsageError("star mechanism takes a star:<k> target");
                    return MarkedQuery::make_star(spec.k);
                }
                if (!spec.pattern)
                    throw UsageError("pattern mechanism needs a subgraph pattern");
                return MarkedQuery::make_pattern(formulate_tree(*spec.pattern, q.root));
            }();
            return run_with_reps(g, query, cfg);
        }
        case Mechanism::rr: {
            if (q.noiseless)
                throw UsageError("rr baseline has no noiseless mode");
            RrTarget target = [&] {
                switch (spec.kind) {
                    case ParsedPatternSpec::Kind::walk: return RrTarget::walk(spec.k);
                    case ParsedPatternSpec::Kind::path: return RrTarget::path(spec.k);
                    default: return RrTarget::from_pattern(*spec.pattern);
                }
            }();
            auto noisy = build_noisy_graph(g, eps, cell_seed, trial);
            return rr_count(noisy, target, q.distinct);
        }
    }
    throw UsageError("unknown mechanism");
}

namespace {

struct Cell {
    QuerySpec query;
    double eps;
    int n_rep;
    std::uint64_t seed;
};

int worker_count() {
    if (const char* env = std::getenv("LDPGC_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

ReportRow summarize(const std::string& dataset, const Cell& cell, int trials,
                    const std::vector<Estimate>& estimates,
                    const std::vector<double>& wall_ms, std::optional<double> exact) {
    ReportRow row;
    row.dataset = dataset;
    row.query = cell.query.pattern_spec;
    row.mechanism = mechanism_name(cell.query.mech);
    row.eps = cell.eps;
    row.n_rep = cell.n_rep;
    row.trials = trials;
    row.exact = exact;

    std::vector<double> values;
    double n2n = 0, n2a = 0, a2n = 0;
    for (const auto& e : estimates) {
        values.push_back(e.value);
        n2n += static_cast<double>(e.ledger.bytes_node_to_node);
        n2a += static_cast<double>(e.ledger.bytes_node_to_analyzer);
        a2n += static_cast<double>(e.ledger.bytes_analyzer_to_node);
    }
    row.mean_estimate =
        std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    row.bytes_node_to_node = n2n / trials;
    row.bytes_node_to_analyzer = n2a / trials;
    row.bytes_analyzer_to_node = a2n / trials;
    row.bytes_total = row.bytes_node_to_node + row.bytes_node_to_analyzer +
                      row.bytes_analyzer_to_node;
    row.rounds = estimates.empty() ? 0 : estimates.front().rounds;

    if (exact && *exact != 0) {
        std::vector<double> rel;
        for (double v : values) rel.push_back(std::fabs(v - *exact) / *exact * 100.0);
        row.rel_err_pct = report_average(rel, row.trimmed);
    }

    std::vector<double> w = wall_ms;
    std::sort(w.begin(), w.end());
    row.wall_ms_median = w.empty() ? 0 : w[w.size() / 2];
    return row;
}

}  // namespace

std::vector<ReportRow> run_plan(const ExperimentPlan& plan) {
    if (plan.trials < 1) throw UsageError("plan needs trials >= 1");
    for (double e : plan.eps_grid)
        if (e <= 0) throw UsageError("plan eps values must be > 0");
    Graph g = load_dataset(plan.dataset, plan.master_seed);

    std::vector<Cell> cells;
    for (const auto& q : plan.queries)
        for (double eps : plan.eps_grid)
            for (int nrep : plan.nrep_grid) {
                std::string salt = q.canonical() + " eps=" + std::to_string(eps) +
                                   " nrep=" + std::to_string(nrep);
                cells.push_back({q, eps, nrep, fnv1a(salt, plan.master_seed ^
                                                               0xcbf29ce484222325ULL)});
            }

    // (cell, trial) tasks over a worker pool; the (cell seed, trial) keying
    // keeps results independent of scheduling order
    std::vector<std::vector<Estimate>> estimates(cells.size());
    std::vector<std::vector<double>> wall(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        estimates[c].resize(plan.trials);
        wall[c].assign(plan.trials, 0.0);
    }
    std::atomic<std::size_t> next{0};
    const std::size_t total_tasks = cells.size() * plan.trials;
    auto work = [&] {
        for (;;) {
            std::size_t task = next.fetch_add(1);
            if (task >= total_tasks) return;
            std::size_t c = task / plan.trials;
            std::uint64_t t = task % plan.trials;
            auto t0 = std::chrono::steady_clock::now();
            estimates[c][t] = run_query_trial(g, cells[c].query, cells[c].eps,
                                              cells[c].n_rep, cells[c].seed, t);
            auto t1 = std::chrono::steady_clock::now();
            wall[c][t] = std::chrono::duration<double, std::milli>(t1 - t0).count();
        }
    };
    int workers = std::min<int>(worker_count(), static_cast<int>(total_tasks));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers - 1; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    std::vector<ReportRow> rows;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        auto exact = resolve_exact(g, cells[c].query, plan.exact_cache_path);
        rows.push_back(summarize(plan.dataset, cells[c], plan.trials, estimates[c],
                                 wall[c], exact));
    }
    return rows;
}

std::vector<ReportRow> compare_trees(const std::string& dataset, const std::string& pattern,
                                     const std::vector<int>& roots, double eps, int trials,
                                     int n_rep, std::uint64_t master_seed) {
    if (roots.empty()) throw UsageError("compare-trees needs at least one root");
    ExperimentPlan plan;
    plan.dataset = dataset;
    plan.eps_grid = {eps};
    plan.nrep_grid = {n_rep};
    plan.trials = trials;
    plan.master_seed = master_seed;
    for (int r : roots) {
        QuerySpec q;
        q.mech = Mechanism::pattern;
        q.pattern_spec = pattern;
        q.root = r;
        q.distinct = true;  // one shared exact reference across formulations
        plan.queries.push_back(q);
    }
    auto rows = run_plan(plan);
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i].query = pattern + " root=" + std::to_string(roots[i]);
    return rows;
}

ExperimentPlan parse_plan(std::istream& in) {
    ExperimentPlan plan;
    plan.nrep_grid = {1};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto fail = [&](const std::string& why) {
            throw UsageError("plan line " + std::to_string(line_no) + ": " + why);
        };
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        if (key == "dataset") {
            if (!(ls >> plan.dataset)) fail("dataset needs a source spec");
        } else if (key == "seed") {
            if (!(ls >> plan.master_seed)) fail("seed needs an integer");
        } else if (key == "trials") {
            if (!(ls >> plan.trials) || plan.trials < 1) fail("trials needs a count >= 1");
        } else if (key == "eps") {
            plan.eps_grid.clear();
            double v;
            while (ls >> v) plan.eps_grid.push_back(v);
            if (plan.eps_grid.empty()) fail("eps needs at least one value");
        } else if (key == "nrep") {
            plan.nrep_grid.clear();
            int v;
            while (ls >> v) plan.nrep_grid.push_back(v);
            if (plan.nrep_grid.empty()) fail("nrep needs at least one value");
        } else if (key == "query") {
            std::string mech, pattern;
            if (!(ls >> mech >> pattern)) fail("query needs '<mechanism> <pattern>'");
            QuerySpec q;
            q.mech = parse_mechanism(mech);
            q.pattern_spec = pattern;
            std::string flag;
            while (ls >> flag) {
                if (flag == "distinct") q.distinct = true;
                else if (flag == "unoriented") q.unoriented = true;
                else if (flag == "noiseless") q.noiseless = true;
                else if (flag.rfind("root=", 0) == 0) q.root = std::stoi(flag.substr(5));
                else fail("unknown query flag '" + flag + "'");
            }
            parse_pattern_spec(q.pattern_spec);  // validate early
            plan.queries.push_back(std::move(q));
        } else if (key == "output") {
            if (!(ls >> plan.output_path)) fail("output needs a path");
        } else if (key == "exact-cache") {
            if (!(ls >> plan.exact_cache_path)) fail("exact-cache needs a path");
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (plan.dataset.empty()) throw UsageError("plan: missing dataset");
    if (plan.queries.empty()) throw UsageError("plan: missing query lines");
    if (plan.eps_grid.empty()) throw UsageError("plan: missing eps line");
    return plan;
}

ExperimentPlan parse_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open plan file " + path);
    return parse_plan(in);
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out.precision(15);
    out << "dataset,query,mechanism,eps,n_rep,trials,trimmed,rel_err_pct,exact,"
           "mean_estimate,bytes_node_to_node,bytes_node_to_analyzer,"
           "bytes_analyzer_to_node,bytes_total,rounds,wall_ms_median\n";
    for (const auto& r : rows) {
        out << r.dataset << ',' << r.query << ',' << r.mechanism << ',' << r.eps << ','
            << r.n_rep << ',' << r.trials << ',' << (r.trimmed ? 1 : 0) << ',';
        if (r.rel_err_pct) out << *r.rel_err_pct;
        out << ',';
        if (r.exact) out << *r.exact;
        out << ',' << r.mean_estimate << ',' << r.bytes_node_to_node << ','
            << r.bytes_node_to_analyzer << ',' << r.bytes_analyzer_to_node << ','
            << r.bytes_total << ',' << r.rounds << ',' << r.wall_ms_median << '\n';
    }
}

}  // namespace ldpgc
