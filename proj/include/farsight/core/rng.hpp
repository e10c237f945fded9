#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace farsight {

// Deterministic standard normals: mt19937_64 + Box-Muller. Hand-rolled so
// sampled outputs are reproducible independent of the stdlib's
// normal_distribution implementation.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        constexpr double two_pi = 6.28318530717958647692;
        spare_ = r * std::sin(two_pi * u2);
        have_spare_ = true;
        return r * std::cos(two_pi * u2);
    }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return (rng_() >> 11) * (1.0 / 9007199254740992.0); }

    std::uint64_t bits() { return rng_(); }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace farsight
