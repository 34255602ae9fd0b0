#pragma once
#include <cstdint>

namespace ldpgc {

// Counter-free keyed RNG stream. Every draw site derives its stream from
// (master seed, trial, rep, party, round), so identical keys replay
// bit-identically and trials never share state. Party is a node index,
// kAnalyzerParty, or kGeneratorParty.
inline constexpr std::int64_t kAnalyzerParty = -1;
inline constexpr std::int64_t kGeneratorParty = -2;

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    // splitmix64 finalizer: full avalanche, bijective
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    return mix64(state += 0x9e3779b97f4a7c15ULL);
}
}  // namespace detail

class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t rep,
              std::int64_t party, std::uint64_t round) {
        // every key word passes through a full avalanche before the next one
        // folds in, so distinct tuples never share low-bit structure
        std::uint64_t h = detail::mix64(master_seed + 0x9e3779b97f4a7c15ULL);
        h = detail::mix64(h ^ trial);
        h = detail::mix64(h ^ rep);
        h = detail::mix64(h ^ static_cast<std::uint64_t>(party));
        h = detail::mix64(h ^ round);
        for (auto& w : state_) w = detail::splitmix64(h);
    }

    std::uint64_t next_u64() {
        // xoshiro256++
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in the open interval (0,1); never returns an exact endpoint.
    double uniform_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform integer in {0,...,n-1} via rejection-free 128-bit scaling.
    std::uint64_t uniform_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

}  // namespace ldpgc
