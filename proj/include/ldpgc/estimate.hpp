#pragma once
#include <cstdint>
#include <optional>

#include "ldpgc/netsim.hpp"

namespace ldpgc {

// Mechanism output for one trial.
struct Estimate {
    double value = 0;
    std::optional<double> exact;  // oracle reference when the caller has one
    double eps_spent = 0;         // worst per-node effective budget
    CommLedger ledger;
    int rounds = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;

    std::optional<double> rel_error() const {
        if (!exact || *exact == 0) return std::nullopt;
        return std::abs(value - *exact) / std::abs(*exact);
    }
};

}  // namespace ldpgc
