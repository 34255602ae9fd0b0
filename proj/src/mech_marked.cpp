#include "ldpgc/mech_marked.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ldpgc/error.hpp"
#include "ldpgc/rng.hpp"

namespace ldpgc {

double marking_rescale(int k, double divisor) {
    double f = 1;
    for (int i = 0; i <= k; ++i) f *= (k + 1);
    return f / divisor;
}

MarkVector sample_marks(std::size_t n, int k, std::uint64_t seed, std::uint64_t trial,
                        std::uint64_t rep) {
    MarkVector marks(n);
    for (std::size_t i = 0; i < n; ++i) {
        RngStream rng(seed, trial, rep, static_cast<std::int64_t>(i), 0);
        marks[i] = static_cast<std::uint8_t>(rng.uniform_below(k + 1));
    }
    return marks;
}

namespace {

void validate(const MarkedRunConfig& cfg) {
    if (!cfg.noiseless && cfg.eps <= 0)
        throw UsageError("marked mechanisms need eps > 0 unless noiseless");
    if (cfg.n_rep < 1) throw UsageError("n_rep must be >= 1");
}

double noise(const MarkedRunConfig& cfg, double scale, RngStream& rng) {
    return cfg.noiseless ? 0.0 : laplace(scale, rng);
}

// Marking round: every node publishes its mark to its neighbors and the
// analyzer. With fixed marks the sampling is bypassed but messages still flow.
MarkVector marking_round(const Graph& g, int k, const MarkedRunConfig& cfg, NetSim& net) {
    MarkVector marks;
    if (cfg.fixed_marks) {
        if (cfg.fixed_marks->size() != g.n())
            throw UsageError("fixed marks length must equal node count");
        for (auto m : *cfg.fixed_marks)
            if (m > k) throw UsageError("fixed mark exceeds k");
        marks = *cfg.fixed_marks;
    } else {
        marks = sample_marks(g.n(), k, cfg.seed, cfg.trial, cfg.rep);
    }
    for (std::uint32_t i = 0; i < g.n(); ++i) {
        for (std::uint32_t j : g.neighbors(i)) net.send_mark(i, j, marks[i]);
        net.send_mark(i, NetSim::kAnalyzer, marks[i]);
    }
    net.record_marks(marks);
    net.end_round();
    return marks;
}

Estimate finish(const MarkedRunConfig& cfg, NetSim& net, double value, int rounds,
                PrivacyAccountant& acct) {
    // an externally supplied accountant spans a larger composition; its owner
    // asserts the composite budget
    if (!cfg.accountant) acct.assert_total(cfg.eps);
    Estimate est;
    est.value = value;
    est.eps_spent = acct.max_effective_total();
    est.ledger = net.ledger();
    est.rounds = rounds;
    est.seed = cfg.seed;
    est.trial = cfg.trial;
    if (cfg.transcript_out) *cfg.transcript_out = net.transcript();
    return est;
}

}  // namespace

Estimate run_path(const Graph& g, int k, const MarkedRunConfig& cfg) {
    if (k < 2) throw UsageError("path mechanism needs k >= 2");
    validate(cfg);
    const std::size_t n = g.n();
    NetSim net(n, cfg.capture_transcript || cfg.transcript_out != nullptr);
    PrivacyAccountant local_acct;
    PrivacyAccountant& acct = cfg.accountant ? *cfg.accountant : local_acct;

    MarkVector marks = marking_round(g, k, cfg, net);
    for (std::uint32_t i = 0; i < n; ++i)
        acct.charge(i, marks[i], cfg.eps, Composition::parallel);

    std::vector<double> x(n, 0.0);
    double prev_max = 1.0;  // X^(0) = 1 everywhere, known without a broadcast
    for (int round = 1; round <= k - 1; ++round) {
        const bool last = (round == k - 1);
        for (std::uint32_t i = 0; i < n; ++i) {
            if (marks[i] != round) continue;  // silent in all other rounds
            double sum = 0;
            if (round == 1) {
                for (std::uint32_t j : g.neighbors(i))
                    if (marks[j] == 0) sum += 1.0;
            } else {
                for (auto [from, value] : net.take_inbox(i))
                    if (from != NetSim::kAnalyzer) sum += value;
            }
            RngStream rng(cfg.seed, cfg.trial, cfg.rep, i,
                          static_cast<std::uint64_t>(round));
            double xi = sum + noise(cfg, prev_max / cfg.eps, rng);
            if (last) {
                double closures = 0;
                for (std::uint32_t j : g.neighbors(i))
                    if (marks[j] == k) closures += 1.0;
                xi *= closures + noise(cfg, 1.0 / cfg.eps, rng);
            }
            x[i] = xi;
            net.publish(i, xi);
            if (!last)
                for (std::uint32_t j : g.neighbors(i))
                    if (marks[j] == round + 1) net.send(i, j, xi);
            net.send(i, NetSim::kAnalyzer, xi);
        }
        double m = 0;
        for (std::uint32_t i = 0; i < n; ++i)
            if (marks[i] == round) m = std::max(m, std::fabs(x[i]));
        prev_max = m;  // 0 when the active set is empty
        if (!last)  // analyzer sends next round's public noise scale to its actives
            for (std::uint32_t i = 0; i < n; ++i)
                if (marks[i] == round + 1) net.send(NetSim::kAnalyzer, i, prev_max);
        net.end_round();
    }

    double total = 0;
    for (std::uint32_t i = 0; i < n; ++i)
        if (marks[i] == k - 1) total += x[i];
    double value = marking_rescale(k, cfg.distinct ? 2.0 : 1.0) * total;
    return finish(cfg, net, value, k, acct);
}

Estimate run_pattern(const Graph& g, const TreeForm& t, const MarkedRunConfig& cfg) {
    validate(cfg);
    const int k = t.k;
    const std::size_t n = g.n();
    NetSim net(n, cfg.capture_transcript || cfg.transcript_out != nullptr);
    PrivacyAccountant local_acct;
    PrivacyAccountant& acct = cfg.accountant ? *cfg.accountant : local_acct;

    MarkVector marks = marking_round(g, k, cfg, net);
    for (std::uint32_t i = 0; i < n; ++i)
        acct.charge(i, marks[i], cfg.eps, Composition::parallel);

    // Public per-subscript maxima; leaves are pinned to 1 by initialization.
    std::vector<double> max_of(k + 1, 0.0);
    for (int s = 0; s <= k; ++s)
        if (t.leaf[s]) max_of[s] = 1.0;

    std::vector<double> x(n, 0.0);
    int compute_rounds = 0;
    for (int sub = 0; sub <= k; ++sub) {
        if (t.leaf[sub]) continue;  // counts are pre-initialized to 1
        ++compute_rounds;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (marks[i] != sub) continue;
            // child sums arrive over earlier rounds; split the drained inbox
            // by sender mark
            std::vector<double> child_sum(k + 1, 0.0);
            for (auto [from, value] : net.take_inbox(i)) {
                if (from == NetSim::kAnalyzer) continue;
                child_sum[marks[static_cast<std::uint32_t>(from)]] += value;
            }
            RngStream rng(cfg.seed, cfg.trial, cfg.rep, i,
                          static_cast<std::uint64_t>(sub));
            double xi = 1.0;
            for (int c : t.children[sub]) {
                double sum = child_sum[c];
                if (t.leaf[c]) {
                    sum = 0;
                    for (std::uint32_t j : g.neighbors(i))
                        if (marks[j] == c) sum += 1.0;  // X^c = 1, never transmitted
                }
                double y = sum + noise(cfg, max_of[c] / cfg.eps, rng);
                xi *= y;
            }
            x[i] = xi;
            net.publish(i, xi);
            if (sub < k) {
                int parent = t.parent[sub];
                for (std::uint32_t j : g.neighbors(i))
                    if (marks[j] == parent) net.send(i, j, xi);
            }
            net.send(i, NetSim::kAnalyzer, xi);
        }
        double m = 0;
        for (std::uint32_t i = 0; i < n; ++i)
            if (marks[i] == sub) m = std::max(m, std::fabs(x[i]));
        max_of[sub] = m;
        if (sub < k) {
            // analyzer forwards this public scale to the nodes that will sum
            // mark-`sub` neighbors later, i.e. the parent round's actives
            int parent = t.parent[sub];
            for (std::uint32_t i = 0; i < n; ++i)
                if (marks[i] == parent) net.send(NetSim::kAnalyzer, i, max_of[sub]);
        }
        net.end_round();
    }

    double total = 0;
    for (std::uint32_t i = 0; i < n; ++i)
        if (marks[i] == k) total += x[i];
    double divisor = cfg.distinct ? static_cast<double>(t.sigma) : 1.0;
    double value = marking_rescale(k, divisor) * total;
    return finish(cfg, net, value, 1 + compute_rounds, acct);
}

Estimate run_star(const Graph& g, int k, const MarkedRunConfig& cfg) {
    if (k < 1) throw UsageError("star mechanism needs k >= 1");
    validate(cfg);
    const std::size_t n = g.n();
    NetSim net(n, cfg.capture_transcript || cfg.transcript_out != nullptr);
    PrivacyAccountant local_acct;
    PrivacyAccountant& acct = cfg.accountant ? *cfg.accountant : local_acct;

    double total = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        RngStream rng(cfg.seed, cfg.trial, cfg.rep, i, 1);
        // the edge behind a degree is shared by two nodes, hence scale 2/eps
        double noisy_degree =
            static_cast<double>(g.degree(i)) + noise(cfg, 2.0 / cfg.eps, rng);
        double product = 1.0;
        for (int s = 0; s < k; ++s) product *= (noisy_degree - s);
        acct.charge(i, 1, cfg.eps / 2.0, Composition::parallel);
        net.publish(i, product);
        net.send(i, NetSim::kAnalyzer, product);
        total += product;
    }
    net.end_round();
    if (cfg.distinct) {
        double fact = 1;
        for (int s = 2; s <= k; ++s) fact *= s;
        total /= fact;
    }
    return finish(cfg, net, total, 1, acct);
}

MarkedQuery MarkedQuery::make_pattern(TreeForm t) {
    MarkedQuery q;
    q.mech = Mech::pattern;
    q.k = t.k;
    q.tree = std::move(t);
    return q;
}

namespace {

Estimate run_marked_once(const Graph& g, const MarkedQuery& query,
                         const MarkedRunConfig& cfg) {
    switch (query.mech) {
        case MarkedQuery::Mech::path:
            return run_path(g, query.k, cfg);
        case MarkedQuery::Mech::pattern:
            return run_pattern(g, *query.tree, cfg);
        case MarkedQuery::Mech::star:
            return run_star(g, query.k, cfg);
    }
    throw UsageError("unknown marked mechanism");
}

}  // namespace

Estimate run_with_reps(const Graph& g, const MarkedQuery& query, MarkedRunConfig cfg) {
    validate(cfg);
    const int reps = cfg.n_rep;
    if (reps == 1) return run_marked_once(g, query, cfg);

    PrivacyAccountant local_acct;
    PrivacyAccountant& acct = cfg.accountant ? *cfg.accountant : local_acct;
    MarkedRunConfig per_run = cfg;
    per_run.eps = cfg.eps / reps;
    per_run.n_rep = 1;
    per_run.accountant = &acct;
    per_run.transcript_out = nullptr;

    double sum = 0;
    CommLedger ledger;
    int rounds = 0;
    for (int r = 0; r < reps; ++r) {
        per_run.rep = cfg.rep * reps + r;  // fresh marks per run
        Estimate e = run_marked_once(g, query, per_run);
        sum += e.value;
        ledger += e.ledger;
        rounds += e.rounds;
        acct.new_scope();
    }
    acct.assert_total(cfg.eps);

    Estimate est;
    est.value = sum / reps;
    est.eps_spent = acct.max_effective_total();
    est.ledger = ledger;
    est.rounds = rounds;
    est.seed = cfg.seed;
    est.trial = cfg.trial;
    return est;
}

ErrorDecomposition error_decompose(const Graph& g, const MarkedQuery& query,
                                   const MarkedRunConfig& cfg, int trials, double exact) {
    if (exact == 0) throw UsageError("error decomposition needs a nonzero exact count");
    std::vector<double> sampling, dp, total;
    for (int t = 0; t < trials; ++t) {
        MarkedRunConfig dp_cfg = cfg;
        dp_cfg.trial = cfg.trial + static_cast<std::uint64_t>(t);
        MarkedRunConfig silent_cfg = dp_cfg;
        silent_cfg.noiseless = true;
        double dp_value = run_with_reps(g, query, dp_cfg).value;
        double silent_value = run_with_reps(g, query, silent_cfg).value;
        sampling.push_back(std::fabs(silent_value - exact) / std::fabs(exact));
        dp.push_back(std::fabs(dp_value - silent_value) / std::fabs(exact));
        total.push_back(std::fabs(dp_value - exact) / std::fabs(exact));
    }
    auto average = [](std::vector<double> v, bool trim) {
        if (trim) {
            std::sort(v.begin(), v.end());
            v.erase(v.end() - 2, v.end());
            v.erase(v.begin(), v.begin() + 2);
        }
        return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
    };
    bool trim = (trials == 10);
    ErrorDecomposition out;
    out.sampling_rel_err = average(sampling, trim);
    out.dp_rel_err = average(dp, trim);
    out.total_rel_err = average(total, trim);
    out.trimmed = trim;
    return out;
}

}  // namespace ldpgc
