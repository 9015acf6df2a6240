#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bellops/errors.hpp"
#include "bellops/numeric.hpp"
#include "bellops/rng.hpp"
#include "bellops/signs.hpp"

namespace bellops {

inline constexpr double norm_tolerance = 1e-12;

namespace detail {

inline void check_dims(int n, int r, std::size_t size, const char* what) {
    if (n < 1 || r < 1) throw shape_error(std::string(what) + ": need n >= 1, r >= 1");
    auto expected = static_cast<std::size_t>(checked_pow(r, n));
    if (size != expected) throw shape_error(std::string(what) + ": value count != r^n");
}

// Rescales to unit sum of squares. A no-op (bitwise) when the input is
// already exactly normalized, which keeps dyadic coefficient families exact.
inline void normalize(std::vector<double>& values, const char* what) {
    double ss = sum_of_squares(values);
    if (!(ss > 0.0) || !std::isfinite(ss))
        throw degenerate_error(std::string(what) + ": values cannot be normalized");
    double scale = 1.0 / std::sqrt(ss);
    if (scale != 1.0)
        for (double& v : values) v *= scale;
}

} // namespace detail

// Nonnegative magnitudes c(k); the signs live in SignAssignment.
struct CoefficientTensor {
    int n = 0;
    int r = 0;
    std::vector<double> values; // r^n entries, sum of squares 1

    CoefficientTensor() = default;
    CoefficientTensor(int n_, int r_, std::vector<double> vals)
        : n(n_), r(r_), values(std::move(vals)) {
        detail::check_dims(n, r, values.size(), "CoefficientTensor");
        for (double v : values)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw shape_error("CoefficientTensor: entries must be finite and >= 0");
        if (std::abs(sum_of_squares(values) - 1.0) > norm_tolerance)
            throw shape_error("CoefficientTensor: sum of squares != 1");
    }
};

// Signed coefficients +-c(k) of a Bell operator.
struct SignedCoefficients {
    int n = 0;
    int r = 0;
    std::vector<double> values; // r^n entries, sum of squares 1

    SignedCoefficients() = default;
    SignedCoefficients(int n_, int r_, std::vector<double> vals)
        : n(n_), r(r_), values(std::move(vals)) {
        detail::check_dims(n, r, values.size(), "SignedCoefficients");
        for (double v : values)
            if (!std::isfinite(v)) throw shape_error("SignedCoefficients: non-finite entry");
        if (std::abs(sum_of_squares(values) - 1.0) > norm_tolerance)
            throw shape_error("SignedCoefficients: sum of squares != 1");
    }
};

// A random Bell operator up to the choice of measurement directions.
struct BellSpec {
    SignedCoefficients coeffs;

    BellSpec() = default;
    explicit BellSpec(SignedCoefficients c) : coeffs(std::move(c)) {}

    int n() const { return coeffs.n; }
    int r() const { return coeffs.r; }
    std::int64_t terms() const { return static_cast<std::int64_t>(coeffs.values.size()); }
};

enum class CoefficientScheme { uniform, random_normalized, explicit_values };

inline CoefficientScheme scheme_from_string(const std::string& s) {
    if (s == "uniform") return CoefficientScheme::uniform;
    if (s == "random_normalized" || s == "random") return CoefficientScheme::random_normalized;
    if (s == "explicit") return CoefficientScheme::explicit_values;
    throw config_error("unknown coefficient scheme: " + s);
}

inline std::string to_string(CoefficientScheme s) {
    switch (s) {
        case CoefficientScheme::uniform: return "uniform";
        case CoefficientScheme::random_normalized: return "random_normalized";
        case CoefficientScheme::explicit_values: return "explicit";
    }
    return "?";
}

inline CoefficientTensor make_coefficients(CoefficientScheme scheme, int n, int r,
                                           std::uint64_t seed = 0,
                                           std::span<const double> explicit_values = {}) {
    if (n < 1 || r < 1) throw domain_error("make_coefficients: need n >= 1, r >= 1");
    auto count = static_cast<std::size_t>(checked_pow(r, n));
    std::vector<double> values;
    switch (scheme) {
        case CoefficientScheme::uniform:
            values.assign(count, 1.0 / std::sqrt(double(count)));
            break;
        case CoefficientScheme::random_normalized: {
            values.resize(count);
            CounterRng rng(tagged_key(seed, seed_tag::coefficients));
            for (std::size_t i = 0; i < count; i += 2) {
                auto [g0, g1] = rng.next_gaussian_pair();
                values[i] = std::abs(g0);
                if (i + 1 < count) values[i + 1] = std::abs(g1);
            }
            break;
        }
        case CoefficientScheme::explicit_values: {
            if (explicit_values.size() != count)
                throw shape_error("make_coefficients: explicit value count != r^n");
            values.assign(explicit_values.begin(), explicit_values.end());
            for (double v : values)
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw shape_error("make_coefficients: explicit entries must be >= 0");
            break;
        }
    }
    detail::normalize(values, "make_coefficients");
    return CoefficientTensor(n, r, std::move(values));
}

inline SignedCoefficients apply_signs(const CoefficientTensor& c, const SignAssignment& s) {
    if (c.n != s.n || c.r != s.r || c.values.size() != s.signs.size())
        throw shape_error("apply_signs: dimension mismatch");
    std::vector<double> v(c.values.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = c.values[i] * double(s.signs[i]);
    return SignedCoefficients(c.n, c.r, std::move(v));
}

// Signed coefficients straight from values (rescaled to unit sum of squares).
inline SignedCoefficients signed_coefficients(int n, int r, std::vector<double> values) {
    detail::check_dims(n, r, values.size(), "signed_coefficients");
    for (double v : values)
        if (!std::isfinite(v)) throw shape_error("signed_coefficients: non-finite entry");
    detail::normalize(values, "signed_coefficients");
    return SignedCoefficients(n, r, std::move(values));
}

} // namespace bellops
