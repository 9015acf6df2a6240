#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>

#include "bellops/errors.hpp"

namespace bellops {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Neumaier-compensated sum. Normalization invariants are checked at 1e-12
// on tensors with up to 2^20 entries, which a naive accumulation would miss.
inline double compensated_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

inline double sum_of_squares(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double sq = x * x;
        double t = sum + sq;
        if (sum >= sq)
            comp += (sum - t) + sq;
        else
            comp += (sq - t) + sum;
        sum = t;
    }
    return sum + comp;
}

// Wraps an angle into [0, 2*pi).
inline double canonical_angle(double t) {
    double v = std::fmod(t, two_pi);
    if (v < 0.0) v += two_pi;
    if (v >= two_pi) v = 0.0; // the add above can round up to exactly 2*pi
    return v;
}

// exp(i*t), with exact values at arguments that are (bitwise) quadrant
// multiples. cos/sin of the double nearest pi carry O(1e-16) residue that
// would break the exact +-1 algebra relied on at half-turn angles.
inline std::complex<double> unit_phasor(double t) {
    double a = canonical_angle(t);
    if (a == 0.0) return {1.0, 0.0};
    if (a == pi) return {-1.0, 0.0};
    if (a == pi / 2.0) return {0.0, 1.0};
    if (a == pi + pi / 2.0) return {0.0, -1.0};
    return {std::cos(a), std::sin(a)};
}

// r^n with an overflow guard; both trip a size-limit error.
inline std::int64_t checked_pow(int base, int exp,
                                std::int64_t limit = (std::int64_t{1} << 62)) {
    if (base < 1 || exp < 0) throw domain_error("checked_pow: base >= 1, exp >= 0 required");
    std::int64_t acc = 1;
    for (int i = 0; i < exp; ++i) {
        if (acc > limit / base) throw size_limit_error("checked_pow: r^n exceeds size limit");
        acc *= base;
    }
    return acc;
}

} // namespace bellops
