#include "ldpgc/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "ldpgc/error.hpp"

namespace ldpgc {

double laplace(double scale, RngStream& rng) {
    if (scale < 0) throw UsageError("laplace: negative scale");
    if (scale == 0) return 0.0;
    double u = rng.uniform_open01() - 0.5;  // (-1/2, 1/2), never 0
    double sign = u < 0 ? -1.0 : 1.0;
    return sign * scale * std::log(1.0 - 2.0 * std::fabs(u));
}

double rr_keep_probability(double eps) {
    if (eps <= 0) throw UsageError("randomized response requires eps > 0");
    return std::exp(eps) / (std::exp(eps) + 1.0);
}

std::vector<std::uint8_t> rr_perturb(const std::vector<std::uint8_t>& bits, double eps,
                                     RngStream& rng) {
    double p = rr_keep_probability(eps);
    std::vector<std::uint8_t> out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        bool keep = rng.uniform01() < p;
        out[i] = keep ? bits[i] : static_cast<std::uint8_t>(1 - bits[i]);
    }
    return out;
}

double rr_unbias(int bit, double eps) {
    double p = rr_keep_probability(eps);
    double q = 1.0 - p;
    return (bit - q) / (p - q);
}

void PrivacyAccountant::charge(std::int64_t node, int round, double eps,
                               Composition comp) {
    if (eps < 0) throw UsageError("accountant: negative budget charge");
    entries_.push_back({node, round, eps, comp, scope_});
}

namespace {

struct ScopeTotals {
    double basic_sum = 0;
    double parallel_max = 0;
    int worst_round = 0;
};

}  // namespace

void PrivacyAccountant::assert_total(double eps_total) const {
    std::map<std::int64_t, std::map<int, ScopeTotals>> per_node;
    for (const auto& e : entries_) {
        auto& st = per_node[e.node][e.scope];
        if (e.comp == Composition::basic) {
            st.basic_sum += e.eps;
            st.worst_round = e.round;
        } else if (e.eps > st.parallel_max) {
            st.parallel_max = e.eps;
            st.worst_round = e.round;
        }
    }
    const double slack = eps_total * 1e-9 + 1e-12;
    for (const auto& [node, scopes] : per_node) {
        double total = 0;
        int round = 0;
        for (const auto& [scope, st] : scopes) {
            total += st.basic_sum + st.parallel_max;
            round = st.worst_round;
        }
        if (total > eps_total + slack)
            throw AccountingError("privacy budget exceeded at node " +
                                  std::to_string(node) + " round " +
                                  std::to_string(round) + ": spent " +
                                  std::to_string(total) + " > " +
                                  std::to_string(eps_total));
    }
}

double PrivacyAccountant::max_effective_total() const {
    std::map<std::int64_t, std::map<int, ScopeTotals>> per_node;
    for (const auto& e : entries_) {
        auto& st = per_node[e.node][e.scope];
        if (e.comp == Composition::basic)
            st.basic_sum += e.eps;
        else
            st.parallel_max = std::max(st.parallel_max, e.eps);
    }
    double worst = 0;
    for (const auto& [node, scopes] : per_node) {
        double total = 0;
        for (const auto& [scope, st] : scopes) total += st.basic_sum + st.parallel_max;
        worst = std::max(worst, total);
    }
    return worst;
}

}  // namespace ldpgc
