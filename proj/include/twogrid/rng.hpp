#pragma once

#include <cstdint>
#include <random>

#include "twogrid/types.hpp"

namespace twogrid {

// Seedable generator with a fully pinned-down output mapping so that every
// consumer (matrix generation, power-iteration start vectors) is reproducible
// bit-for-bit across platforms and standard libraries.
//
// Engine: std::mt19937_64 (the 64-bit Mersenne Twister mt19937-64, whose
// output sequence is fixed by the C++ standard). Doubles are derived from the
// top 53 bits only; std::uniform_real_distribution is deliberately avoided
// because its output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1): (x >> 11) * 2^-53.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [-1, 1).
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

    // Uniform index in {0, ..., n-1} by rejection from the top bits, so the
    // result is exactly uniform and independent of the modulus.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    // Random direction: uniform_pm1 entries, normalized to unit length.
    Vector unit_vector(Index n) {
        Vector v(n);
        double norm2 = 0.0;
        do {
            for (Index i = 0; i < n; ++i) v[i] = uniform_pm1();
            norm2 = v.norm();
        } while (norm2 == 0.0);
        return v / norm2;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace twogrid
