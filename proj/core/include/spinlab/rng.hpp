#pragma once

#include <cstdint>
#include <random>

namespace spinlab {

/// Seeded RNG with a fixed draw protocol, so trajectories are reproducible
/// bit-for-bit across platforms (std::*_distribution is not portable).
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double u01() { return (eng_() >> 11) * 0x1.0p-53; }

    /// Uniform index in [0, count). count <= 2^26 keeps the floor bias
    /// below 2^-27, irrelevant at desk scale.
    int pick(int count) {
        int i = static_cast<int>(u01() * count);
        return i < count ? i : count - 1;
    }

    bool bernoulli(double p) { return u01() < p; }

    uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

} // namespace spinlab
