#pragma once

#include <cstdint>
#include <random>

namespace meshplan {

/// Seeded RNG with self-contained draw helpers. std::mt19937_64 output is
/// standardized, and the helpers avoid the implementation-defined
/// distributions, so identical seeds give identical instances everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi] inclusive.
    long long uniform_int(long long lo, long long hi) {
        auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long long>(next_u64() % span);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace meshplan
