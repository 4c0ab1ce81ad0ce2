#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "manifoldwalk/errors.hpp"

namespace mw {

// Distributions are hand-rolled on top of std::mt19937_64 because the standard
// pins the engine's output exactly but not the distributions'. This keeps the
// seed -> sample mapping identical across standard libraries.

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from a master seed and up to three ids.
/// Each id is absorbed into the fully mixed state before the next one, so two
/// id tuples collide only if splitmix64 outputs collide.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = master;
    s = splitmix64(s) ^ a;
    s = splitmix64(s) ^ b;
    s = splitmix64(s) ^ c;
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached spare; two uniforms per draw).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    /// Unbiased integer in [0, n) via rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw InvalidArgument("Rng::below: n must be positive");
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    /// First k entries of a Fisher-Yates shuffle of `items`; k <= items.size().
    template <typename T>
    std::vector<T> sample_without_replacement(std::vector<T> items, std::size_t k) {
        if (k > items.size())
            throw InvalidArgument("sample_without_replacement: k exceeds population");
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(items.size() - i));
            std::swap(items[i], items[j]);
        }
        items.resize(k);
        return items;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace mw
