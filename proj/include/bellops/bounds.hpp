#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "bellops/errors.hpp"

namespace bellops {

// High-probability sup-norm ceiling 9*sqrt(s * weight * ln N) for a random
// +-1-signed combination of s bounded terms over an N-point domain.
// Natural log throughout (see version metadata).
inline double szk_bound(std::int64_t s, std::int64_t n_points, double weight = 1.0) {
    if (s < 1) throw domain_error("szk_bound: s must be >= 1");
    if (n_points < 2) throw domain_error("szk_bound: N must be >= 2");
    if (!(weight > 0.0) || !std::isfinite(weight))
        throw domain_error("szk_bound: weight must be > 0");
    return 9.0 * std::sqrt(double(s) * weight * std::log(double(n_points)));
}

enum class PropBound { prop1, prop2, prop3 };

inline PropBound prop_bound_from_string(const std::string& s) {
    if (s == "prop1") return PropBound::prop1;
    if (s == "prop2") return PropBound::prop2;
    if (s == "prop3") return PropBound::prop3;
    throw config_error("unknown bound name: " + s);
}

inline std::string to_string(PropBound b) {
    switch (b) {
        case PropBound::prop1: return "prop1";
        case PropBound::prop2: return "prop2";
        case PropBound::prop3: return "prop3";
    }
    return "?";
}

// Norm ceilings that hold for the vast majority of sign choices:
//   prop1: coplanar operator norm          -- 9*sqrt(r*n*ln n)
//   prop2: fixed-state expectation maximum -- 36*sqrt(r*n*ln n)
//   prop3: extremal two-setting family     -- 13*sqrt(n), r = 2 only
inline double prop_bound(PropBound which, int n, int r) {
    if (n < 2) throw domain_error("prop_bound: need n >= 2");
    if (r < 1) throw domain_error("prop_bound: need r >= 1");
    switch (which) {
        case PropBound::prop1:
            return szk_bound(std::int64_t(r) * n, n);
        case PropBound::prop2:
            return 4.0 * szk_bound(std::int64_t(r) * n, n);
        case PropBound::prop3:
            if (r != 2) throw config_error("prop_bound: prop3 requires r = 2");
            return 13.0 * std::sqrt(double(n));
    }
    throw domain_error("prop_bound: bad selector");
}

// Fraction of sign choices guaranteed to respect the prop1 ceiling:
// 1 - 1/(n^2 * e^(r*n)).
inline double tail_probability(int n, int r) {
    if (n < 2) throw domain_error("tail_probability: need n >= 2");
    if (r < 1) throw domain_error("tail_probability: need r >= 1");
    return 1.0 - std::exp(-double(r) * double(n)) / (double(n) * double(n));
}

} // namespace bellops
