#pragma once

#include <cstdint>

namespace jeig::harness {

// splitmix64: the documented, platform-fixed generator for all test-matrix
// generation. No std:: distributions anywhere (their streams are not
// portable across standard libraries).
struct Prng {
    std::uint64_t state;

    explicit Prng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 random bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
};

}  // namespace jeig::harness
