// Deterministic, platform-independent pseudo-random generator used for
// seeded sampling. splitmix64: a 64-bit state advanced by a Weyl constant,
// output mixed by two xor-shift-multiply rounds. The same seed yields the
// same stream on every platform and standard library.
#pragma once

#include <cstdint>

namespace qmrel {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform value in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    // Uniform value in [lo, hi], inclusive.
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(below(span));
    }

private:
    std::uint64_t state_;
};

}  // namespace qmrel
