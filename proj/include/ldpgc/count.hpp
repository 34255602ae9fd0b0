#pragma once
#include <cstdint>
#include <string>

namespace ldpgc {

// Exact counts use 128-bit integers: N*d(G)^k overflows 64 bits on
// benchmark-scale graphs around k=6.
using Count = __int128;

inline std::string count_to_string(Count v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    std::string s;
    while (u > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    return {s.rbegin(), s.rend()};
}

inline double count_to_double(Count v) { return static_cast<double>(v); }

}  // namespace ldpgc
