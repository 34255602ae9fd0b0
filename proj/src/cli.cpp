#include "ldpgc/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldpgc/baseline_rr.hpp"
#include "ldpgc/count.hpp"
#include "ldpgc/error.hpp"
#include "ldpgc/harness.hpp"
#include "ldpgc/mech_marked.hpp"
#include "ldpgc/mech_walk.hpp"
#include "ldpgc/oracle.hpp"

namespace ldpgc {

namespace {

MarkVector load_marks_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open marks file " + path);
    MarkVector marks;
    long v;
    while (in >> v) {
        if (v < 0 || v > 255) throw IoError("marks file " + path + ": value out of range");
        marks.push_back(static_cast<std::uint8_t>(v));
    }
    if (marks.empty()) throw IoError("marks file " + path + " is empty");
    return marks;
}

std::vector<int> parse_roots(const std::string& text) {
    std::vector<int> roots;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) roots.push_back(std::stoi(item));
    return roots;
}

std::string default_pattern_spec(Mechanism mech, int k) {
    switch (mech) {
        case Mechanism::walk_basic:
        case Mechanism::walk_opt: return "walk:" + std::to_string(k);
        case Mechanism::path: return "path:" + std::to_string(k);
        case Mechanism::star: return "star:" + std::to_string(k);
        case Mechanism::rr: return "walk:" + std::to_string(k);
        case Mechanism::pattern: break;
    }
    throw UsageError("--pattern is required for the pattern mechanism");
}

void print_rows(std::ostream& out, const std::vector<ReportRow>& rows,
                const std::string& output_path) {
    if (output_path.empty()) {
        write_csv(out, rows);
        return;
    }
    std::ofstream f(output_path);
    if (!f) throw IoError("cannot open output file " + output_path);
    write_csv(f, rows);
}

void print_run_summary(std::ostream& out, const ReportRow& row) {
    out.precision(15);
    out << "mechanism: " << row.mechanism << " " << row.query << "\n"
        << "dataset: " << row.dataset << "\n"
        << "eps: " << row.eps << "  n_rep: " << row.n_rep << "  trials: " << row.trials
        << "  rounds: " << row.rounds << "\n";
    if (row.exact)
        out << "exact: " << *row.exact << "\n";
    else
        out << "exact: NA\n";
    out << "estimate mean: " << row.mean_estimate << "\n";
    if (row.rel_err_pct)
        out << "rel err" << (row.trimmed ? " (trimmed)" : "") << ": " << *row.rel_err_pct
            << "%\n";
    out << "comm bytes per trial: node_to_node=" << row.bytes_node_to_node
        << " node_to_analyzer=" << row.bytes_node_to_analyzer
        << " analyzer_to_node=" << row.bytes_analyzer_to_node
        << " total=" << row.bytes_total << "\n";
}

struct RunArgs {
    std::string mech;
    std::string graph;
    std::string pattern;
    int k = 0;
    double eps = 1.0;
    int trials = 10;
    int nrep = 1;
    std::uint64_t seed = 0;
    std::optional<int> root;
    bool distinct = false;
    bool unoriented = false;
    bool noiseless = false;
    std::string fixed_marks;
    bool dump_transcript = false;
    std::string output;
};

void add_graph_option(CLI::App* cmd, RunArgs& args) {
    cmd->add_option("--graph", args.graph, "graph source: file:<path> or er:<N>:<p>")
        ->required();
    cmd->add_option("--seed", args.seed, "master seed (fully determines all outputs)");
}

QuerySpec make_query(const RunArgs& args) {
    QuerySpec q;
    q.mech = parse_mechanism(args.mech);
    q.pattern_spec =
        args.pattern.empty() ? default_pattern_spec(q.mech, args.k) : args.pattern;
    q.root = args.root;
    q.distinct = args.distinct;
    q.unoriented = args.unoriented;
    q.noiseless = args.noiseless;
    parse_pattern_spec(q.pattern_spec);  // validate before running
    return q;
}

int run_command(const RunArgs& args, bool transcript_mode, std::ostream& out) {
    QuerySpec q = make_query(args);
    Graph g = load_dataset(args.graph, args.seed);

    if (!args.fixed_marks.empty() || transcript_mode || args.dump_transcript) {
        // deterministic single-trial path with optional transcript capture
        if (q.mech == Mechanism::rr)
            throw UsageError("--fixed-marks/transcript apply to protocol mechanisms only");
        MarkedRunConfig cfg;
        cfg.eps = args.eps;
        cfg.n_rep = 1;
        cfg.noiseless = args.noiseless;
        cfg.distinct = args.distinct;
        cfg.seed = args.seed;
        Transcript transcript;
        cfg.transcript_out = &transcript;
        if (!args.fixed_marks.empty()) {
            cfg.fixed_marks = load_marks_file(args.fixed_marks);
            if (args.trials > 1 && !args.noiseless)
                throw UsageError(
                    "--fixed-marks needs --noiseless or a single-trial run");
        }
        Estimate est;
        auto spec = parse_pattern_spec(q.pattern_spec);
        switch (q.mech) {
            case Mechanism::path: est = run_path(g, spec.k, cfg); break;
            case Mechanism::star: est = run_star(g, spec.k, cfg); break;
            case Mechanism::pattern:
                est = run_pattern(g, formulate_tree(*spec.pattern, q.root), cfg);
                break;
            case Mechanism::walk_basic:
            case Mechanism::walk_opt: {
                if (!args.fixed_marks.empty())
                    throw UsageError("--fixed-marks applies to marking mechanisms only");
                WalkRunConfig wcfg;
                wcfg.k = spec.k;
                wcfg.eps = args.eps;
                wcfg.noiseless = args.noiseless;
                wcfg.unoriented = args.unoriented;
                wcfg.seed = args.seed;
                wcfg.transcript_out = &transcript;
                est = run_walk(g, q.mech == Mechanism::walk_basic ? WalkVariant::basic
                                                                  : WalkVariant::opt,
                               wcfg);
                break;
            }
            default: throw UsageError("unsupported mechanism for this mode");
        }
        out.precision(15);
        out << "estimate: " << est.value << "\n"
            << "rounds: " << est.rounds << "\n"
            << "comm bytes: " << est.ledger.total_bytes() << "\n";
        if (transcript_mode || args.dump_transcript) transcript.dump(out);
        return 0;
    }

    ExperimentPlan plan;
    plan.dataset = args.graph;
    plan.queries = {q};
    plan.eps_grid = {args.eps};
    plan.nrep_grid = {args.nrep};
    plan.trials = args.trials;
    plan.master_seed = args.seed;
    auto rows = run_plan(plan);
    if (!args.output.empty())
        print_rows(out, rows, args.output);
    print_run_summary(out, rows.front());
    return 0;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"edge-LDP walk, path, and acyclic pattern counting toolkit"};
    app.require_subcommand(1);

    // exact
    RunArgs exact_args;
    auto* exact_cmd = app.add_subcommand("exact", "exact counts from the reference oracles");
    add_graph_option(exact_cmd, exact_args);
    exact_cmd->add_option("--pattern", exact_args.pattern,
                          "walk:<k> | path:<k> | star:<k> | a-b,b-c,...")
        ->required();
    exact_cmd->add_flag("--distinct", exact_args.distinct,
                        "deduplicate orientations/automorphisms");

    // run
    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "execute a mechanism and report error/cost");
    add_graph_option(run_cmd, run_args);
    run_cmd->add_option("--mech", run_args.mech,
                        "walk-basic|walk-opt|path|pattern|star|rr")
        ->required();
    run_cmd->add_option("--pattern", run_args.pattern, "target pattern spec");
    run_cmd->add_option("--k", run_args.k, "target size shorthand for built-in patterns");
    run_cmd->add_option("--eps", run_args.eps, "total privacy budget");
    run_cmd->add_option("--trials", run_args.trials, "independent trials");
    run_cmd->add_option("--nrep", run_args.nrep, "marking repetitions (budget eps/nrep each)");
    run_cmd->add_option("--root", run_args.root, "tree root vertex for pattern queries");
    run_cmd->add_flag("--distinct", run_args.distinct, "deduplicated counting");
    run_cmd->add_flag("--unoriented", run_args.unoriented, "walk reversal correction");
    run_cmd->add_flag("--noiseless", run_args.noiseless, "replace all noise with 0");
    run_cmd->add_option("--fixed-marks", run_args.fixed_marks,
                        "mark file (one integer per line), test hook");
    run_cmd->add_flag("--dump-transcript", run_args.dump_transcript,
                      "print the per-round transcript (single trial)");
    run_cmd->add_option("--output", run_args.output, "write a CSV row here");

    // bench
    std::string plan_path, bench_output;
    auto* bench_cmd = app.add_subcommand("bench", "run an experiment plan file");
    bench_cmd->add_option("--plan", plan_path, "plan file")->required();
    bench_cmd->add_option("--output", bench_output, "CSV output path (overrides plan)");

    // compare-trees
    RunArgs ct_args;
    std::string roots_text;
    auto* ct_cmd = app.add_subcommand("compare-trees",
                                      "same pattern under alternative tree roots");
    add_graph_option(ct_cmd, ct_args);
    ct_cmd->add_option("--pattern", ct_args.pattern, "pattern spec")->required();
    ct_cmd->add_option("--roots", roots_text, "comma-separated root vertices")->required();
    ct_cmd->add_option("--eps", ct_args.eps, "privacy budget");
    ct_cmd->add_option("--trials", ct_args.trials, "trials per formulation");
    ct_cmd->add_option("--nrep", ct_args.nrep, "marking repetitions");
    ct_cmd->add_option("--output", ct_args.output, "CSV output path");

    // transcript
    RunArgs tr_args;
    auto* tr_cmd = app.add_subcommand("transcript",
                                      "single-trial run with a transcript dump");
    add_graph_option(tr_cmd, tr_args);
    tr_cmd->add_option("--mech", tr_args.mech, "mechanism")->required();
    tr_cmd->add_option("--pattern", tr_args.pattern, "target pattern spec");
    tr_cmd->add_option("--k", tr_args.k, "target size shorthand");
    tr_cmd->add_option("--eps", tr_args.eps, "privacy budget");
    tr_cmd->add_option("--root", tr_args.root, "tree root vertex");
    tr_cmd->add_flag("--distinct", tr_args.distinct, "deduplicated counting");
    tr_cmd->add_flag("--noiseless", tr_args.noiseless, "replace all noise with 0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    if (exact_cmd->parsed()) {
        Graph g = load_dataset(exact_args.graph, exact_args.seed);
        auto spec = parse_pattern_spec(exact_args.pattern);
        Count value = 0;
        switch (spec.kind) {
            case ParsedPatternSpec::Kind::walk:
                value = exact_args.distinct ? walk_count_unoriented(g, spec.k)
                                            : walk_count_oriented(g, spec.k);
                break;
            case ParsedPatternSpec::Kind::path: {
                Count oriented = path_count_oriented(g, spec.k);
                value = exact_args.distinct ? oriented / 2 : oriented;
                break;
            }
            case ParsedPatternSpec::Kind::star:
                value = star_count(g, spec.k,
                                   exact_args.distinct ? StarMode::distinct
                                                       : StarMode::ordered);
                break;
            case ParsedPatternSpec::Kind::custom: {
                TreeForm t = formulate_tree(*spec.pattern);
                Count ordered = ordered_embedding_count(g, t);
                value = exact_args.distinct ? ordered / static_cast<Count>(t.sigma)
                                            : ordered;
                break;
            }
        }
        out << count_to_string(value) << "\n";
        return 0;
    }
    if (run_cmd->parsed()) return run_command(run_args, false, out);
    if (tr_cmd->parsed()) {
        tr_args.trials = 1;
        return run_command(tr_args, true, out);
    }
    if (bench_cmd->parsed()) {
        ExperimentPlan plan = parse_plan_file(plan_path);
        if (!bench_output.empty()) plan.output_path = bench_output;
        auto rows = run_plan(plan);
        print_rows(out, rows, plan.output_path);
        return 0;
    }
    if (ct_cmd->parsed()) {
        auto rows = compare_trees(ct_args.graph, ct_args.pattern, parse_roots(roots_text),
                                  ct_args.eps, ct_args.trials, ct_args.nrep, ct_args.seed);
        print_rows(out, rows, ct_args.output);
        return 0;
    }
    return 2;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(argc, argv, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SizeGuardError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ldpgc
