#pragma once

#include <cstdint>
#include <random>

// Deterministic RNG wrapper. std::mt19937_64 has a fully specified output
// sequence, but the standard distributions do not, so bounded draws are done
// by hand here (rejection sampling) to keep results identical everywhere.

namespace bookspectra {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    // uniform in [0, bound), bound >= 1
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % bound;
    }

    // uniform in [lo, hi] inclusive
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // uniform in [0, 1) with 53 random bits
    double unit() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace bookspectra
