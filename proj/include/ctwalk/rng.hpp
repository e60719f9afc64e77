#pragma once

#include <cstdint>
#include <random>

namespace ctwalk {

// Deterministic random source. mt19937_64 has a fully specified output
// sequence, and the value mappings below are fixed arithmetic (no
// std::uniform_real_distribution, whose algorithm is implementation-defined),
// so a seed produces identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0,1) with 53 random mantissa bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

} // namespace ctwalk
