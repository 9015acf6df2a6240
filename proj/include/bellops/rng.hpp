#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace bellops {

// Counter-based generator in the splitmix64 family. Output i is a pure
// function of (key, i), so streams can be split per trial and consumed in any
// order with identical results on every platform and thread count.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ull;

    // Stafford mix13 finalizer; bijective on 64-bit words.
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    static std::uint64_t word_at(std::uint64_t key, std::uint64_t counter) {
        return mix(key + golden * (counter + 1));
    }

    std::uint64_t next_u64() { return word_at(key_, counter_++); }

    // Uniform in [0, 1), 53 significant bits.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    int next_sign() { return (next_u64() >> 63) ? -1 : +1; }

    // Box-Muller; always consumes exactly two words per pair.
    std::pair<double, double> next_gaussian_pair() {
        double u1 = next_unit();
        double u2 = next_unit();
        double rad = std::sqrt(-2.0 * std::log1p(-u1)); // 1-u1 in (0, 1]
        double ang = 2.0 * std::numbers::pi * u2;
        return {rad * std::cos(ang), rad * std::sin(ang)};
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Child seed for stream `index` under `parent`. Injective in `index` for a
// fixed parent (affine-then-bijective map), so per-trial seeds never collide.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
    return CounterRng::word_at(parent ^ 0xD1B54A32D192ED03ull, index);
}

// Stream tags keep independent draws from a single seed decorrelated.
namespace seed_tag {
inline constexpr std::uint64_t signs = 0x5349474E53ull;
inline constexpr std::uint64_t coefficients = 0x434F454646ull;
inline constexpr std::uint64_t angles = 0x414E474C45ull;
inline constexpr std::uint64_t sign_function = 0x46554E43ull;
inline constexpr std::uint64_t optimizer = 0x4F505449ull;
inline constexpr std::uint64_t state = 0x5354415445ull;
inline constexpr std::uint64_t assignment = 0x41535347ull;
} // namespace seed_tag

inline std::uint64_t tagged_key(std::uint64_t seed, std::uint64_t tag) {
    return CounterRng::mix(seed ^ tag);
}

} // namespace bellops
