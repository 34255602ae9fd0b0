#include "ldpgc/mech_walk.hpp"

#include <cmath>

#include "ldpgc/error.hpp"
#include "ldpgc/rng.hpp"

namespace ldpgc {

namespace {

void validate(const WalkRunConfig& cfg) {
    if (cfg.k < 2) throw UsageError("walk mechanisms need k >= 2");
    if (!cfg.noiseless && cfg.eps <= 0)
        throw UsageError("walk mechanisms need eps > 0 unless noiseless");
}

double noise(const WalkRunConfig& cfg, double scale, RngStream& rng) {
    return cfg.noiseless ? 0.0 : laplace(scale, rng);
}

Estimate finish(const WalkRunConfig& cfg, NetSim& net, double value,
                double s_hat, int rounds, PrivacyAccountant& acct) {
    if (cfg.unoriented) {
        // odd k: every walk pairs with its distinct reversal. even k: symmetric
        // walks are counted once, so add the round-(k/2) estimate of them.
        value = (cfg.k % 2 == 1) ? value / 2 : (value + s_hat) / 2;
    }
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

Estimate run_walk_basic(const Graph& g, const WalkRunConfig& cfg) {
    validate(cfg);
    const int k = cfg.k;
    const std::size_t n = g.n();
    NetSim net(n, cfg.capture_transcript || cfg.transcript_out != nullptr);
    PrivacyAccountant local_acct;
    PrivacyAccountant& acct = cfg.accountant ? *cfg.accountant : local_acct;

    std::vector<double> x_prev(n, 1.0), x_cur(n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) net.publish(i, 1.0);  // round 0: X = 1
    net.end_round();

    double s_hat = 0;
    const double per_round_eps = cfg.eps / (2.0 * k);
    for (int round = 1; round <= k; ++round) {
        double max_prev = net.published_max(round - 1);
        for (std::uint32_t i = 0; i < n; ++i) {
            double sum = 0;
            for (std::uint32_t j : g.neighbors(i)) sum += x_prev[j];
            RngStream rng(cfg.seed, cfg.trial, 0, i, static_cast<std::uint64_t>(round));
            double scale = cfg.noiseless ? 0.0 : (2.0 * k / cfg.eps) * max_prev;
            x_cur[i] = sum + noise(cfg, scale, rng);
            acct.charge(i, round, per_round_eps, Composition::basic);
            net.publish(i, x_cur[i]);
            if (round < k)
                net.broadcast_to_all_nodes(i, x_cur[i]);
            net.send(i, NetSim::kAnalyzer, x_cur[i]);
        }
        net.end_round();
        if (cfg.unoriented && k % 2 == 0 && round == k / 2)
            for (std::uint32_t i = 0; i < n; ++i) s_hat += x_cur[i];
        std::swap(x_prev, x_cur);
    }
    double total = 0;
    for (std::uint32_t i = 0; i < n; ++i) total += x_prev[i];
    return finish(cfg, net, total, s_hat, k, acct);
}

Estimate run_walk_opt(const Graph& g, const WalkRunConfig& cfg) {
    validate(cfg);
    const int k = cfg.k;
    const std::size_t n = g.n();
    NetSim net(n, cfg.capture_transcript || cfg.transcript_out != nullptr);
    PrivacyAccountant local_acct;
    PrivacyAccountant& acct = cfg.accountant ? *cfg.accountant : local_acct;

    std::vector<double> x_prev(n, 1.0), x_cur(n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) net.publish(i, 1.0);
    net.end_round();

    double s_hat = 0;
    const double per_charge = cfg.eps / (2.0 * k);
    const bool want_s2 = cfg.unoriented && k == 2;
    for (int round = 1; round <= k - 1; ++round) {
        double max_prev = net.published_max(round - 1);
        const bool last = (round == k - 1);
        for (std::uint32_t i = 0; i < n; ++i) {
            double sum = 0;
            if (round == 1) {
                sum = static_cast<double>(g.degree(i));  // X^0 = 1 everywhere
            } else {
                for (auto [from, value] : net.take_inbox(i))
                    if (from != NetSim::kAnalyzer) sum += value;
            }
            RngStream rng(cfg.seed, cfg.trial, 0, i, static_cast<std::uint64_t>(round));
            double scale = cfg.noiseless ? 0.0 : (2.0 * k / cfg.eps) * max_prev;
            double x = sum + noise(cfg, scale, rng);
            acct.charge(i, round, per_charge, Composition::basic);
            if (last) {
                if (want_s2) {
                    s_hat += x;
                    net.send(i, NetSim::kAnalyzer, x);  // plain count for the correction
                }
                double degree_scale = cfg.noiseless ? 0.0 : 2.0 * k / cfg.eps;
                double noisy_degree =
                    static_cast<double>(g.degree(i)) + noise(cfg, degree_scale, rng);
                acct.charge(i, round, per_charge, Composition::basic);
                x *= noisy_degree;
                net.send(i, NetSim::kAnalyzer, x);
            } else {
                for (std::uint32_t j : g.neighbors(i)) net.send(i, j, x);
                net.send(i, NetSim::kAnalyzer, x);
            }
            x_cur[i] = x;
            net.publish(i, x_cur[i]);
        }
        if (!last) {
            // analyzer computes the global round maximum and broadcasts it
            double m = 0;
            for (std::uint32_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x_cur[i]));
            for (std::uint32_t i = 0; i < n; ++i) net.send(NetSim::kAnalyzer, i, m);
        }
        net.end_round();
        if (cfg.unoriented && k % 2 == 0 && k >= 4 && round == k / 2)
            for (std::uint32_t i = 0; i < n; ++i) s_hat += x_cur[i];
        std::swap(x_prev, x_cur);
    }
    double total = 0;
    for (std::uint32_t i = 0; i < n; ++i) total += x_prev[i];
    return finish(cfg, net, total, s_hat, k - 1, acct);
}

Estimate run_walk(const Graph& g, WalkVariant variant, const WalkRunConfig& cfg) {
    return variant == WalkVariant::basic ? run_walk_basic(g, cfg) : run_walk_opt(g, cfg);
}

}  // namespace ldpgc
