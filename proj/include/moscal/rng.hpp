#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace moscal {

// Deterministic pseudorandom source. mt19937_64 output is fixed by the
// standard; the mappings below avoid std distributions, whose results are
// implementation-defined, so streams are reproducible across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, 1)
    double next_unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform in (0, 1]
    double next_unit_open_low() { return 1.0 - next_unit(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>(next_unit() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace moscal
