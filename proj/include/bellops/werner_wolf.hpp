#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "bellops/coefficients.hpp"
#include "bellops/coplanar.hpp"
#include "bellops/errors.hpp"
#include "bellops/numeric.hpp"
#include "bellops/rng.hpp"

namespace bellops {

// f: {0,1}^n -> {-1,+1}, stored at rank(eps) = sum eps_j 2^j.
struct SignFunction {
    int n = 0;
    std::vector<std::int8_t> values; // 2^n entries, each exactly -1 or +1

    SignFunction() = default;
    SignFunction(int n_, std::vector<std::int8_t> vals) : n(n_), values(std::move(vals)) {
        if (n < 1 || n > max_qubits) throw size_limit_error("SignFunction: n outside [1, 24]");
        if (values.size() != (std::size_t{1} << n))
            throw shape_error("SignFunction: value count != 2^n");
        for (auto v : values)
            if (v != 1 && v != -1) throw shape_error("SignFunction: entries must be +-1");
    }
};

// Fourier coefficients of a sign function; unit-norm by Plancherel.
struct WWCoefficients {
    int n = 0;
    std::vector<double> beta; // 2^n entries

    WWCoefficients() = default;
    WWCoefficients(int n_, std::vector<double> b) : n(n_), beta(std::move(b)) {
        if (n < 1 || n > max_qubits) throw size_limit_error("WWCoefficients: n outside [1, 24]");
        if (beta.size() != (std::size_t{1} << n))
            throw shape_error("WWCoefficients: value count != 2^n");
        if (std::abs(sum_of_squares(beta) - 1.0) > norm_tolerance)
            throw shape_error("WWCoefficients: sum of squares != 1");
    }
};

// In-place unnormalized Walsh-Hadamard transform:
// out[s] = sum_eps (-1)^(eps . s) in[eps].
inline void fwht(std::vector<double>& v) {
    if (v.empty() || (v.size() & (v.size() - 1)) != 0)
        throw shape_error("fwht: length must be a power of two");
    for (std::size_t len = 1; len < v.size(); len <<= 1)
        for (std::size_t i = 0; i < v.size(); i += 2 * len)
            for (std::size_t j = i; j < i + len; ++j) {
                double a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
}

// beta_f(s) = 2^(-n) sum_eps (-1)^(eps . s) f(eps). Exact in doubles: the
// butterfly sums integers and the 2^(-n) scaling is a power of two.
inline WWCoefficients beta_from_f(const SignFunction& f) {
    std::vector<double> b(f.values.begin(), f.values.end());
    fwht(b);
    for (double& x : b) x = std::ldexp(x, -f.n);
    return WWCoefficients(f.n, std::move(b));
}

// Inverse of beta_from_f; rejects coefficients whose preimage is not a sign
// function (entries must land within 1e-9 of +-1).
inline SignFunction f_from_beta(const WWCoefficients& beta) {
    std::vector<double> v(beta.beta);
    fwht(v);
    std::vector<std::int8_t> f(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (std::abs(v[i] - 1.0) <= 1e-9)
            f[i] = 1;
        else if (std::abs(v[i] + 1.0) <= 1e-9)
            f[i] = -1;
        else
            throw not_sign_function_error("f_from_beta: inverse transform entry is not +-1");
    }
    return SignFunction(beta.n, std::move(f));
}

inline BellSpec ww_spec(const WWCoefficients& beta) {
    return BellSpec(SignedCoefficients(beta.n, 2, beta.beta));
}

inline BellSpec ww_spec(const SignFunction& f) { return ww_spec(beta_from_f(f)); }

namespace detail {

inline AngleConfig two_setting_angles(std::size_t n, const std::vector<double>& theta0,
                                      const std::vector<double>& theta1) {
    if (theta0.size() != n || theta1.size() != n)
        throw shape_error("werner-wolf: angle array length != n");
    std::vector<std::vector<double>> t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = {theta0[j], theta1[j]};
    return AngleConfig(std::move(t));
}

} // namespace detail

// Eigenvalue magnitudes |sum_s beta_f(s) exp(i sum_j omega_j theta_{s_j}^j)|
// for every canonical parity vector; the operator norm at these directions
// is the largest entry.
inline std::vector<EigenRecord> ww_eigenvalue_magnitudes(const SignFunction& f,
                                                         const std::vector<double>& theta0,
                                                         const std::vector<double>& theta1) {
    auto angles = detail::two_setting_angles(std::size_t(f.n), theta0, theta1);
    return eigen_spectrum(ww_spec(f), angles);
}

// Product-form coefficients c(eps) = 2^(-n) prod_j (e^(i theta0_j) +
// (-1)^(eps_j) e^(i theta1_j)); unit total weight by the cos^2+sin^2
// identity.
struct ProductCoefficients {
    int n = 0;
    std::vector<std::complex<double>> c; // 2^n entries
    std::vector<double> theta0, theta1;  // source angles

    ProductCoefficients() = default;
    ProductCoefficients(int n_, std::vector<std::complex<double>> c_, std::vector<double> t0,
                        std::vector<double> t1)
        : n(n_), c(std::move(c_)), theta0(std::move(t0)), theta1(std::move(t1)) {
        if (n < 1 || n > max_qubits) throw size_limit_error("ProductCoefficients: n outside [1, 24]");
        if (c.size() != (std::size_t{1} << n) || theta0.size() != std::size_t(n) ||
            theta1.size() != std::size_t(n))
            throw shape_error("ProductCoefficients: dimension mismatch");
        std::vector<double> mags(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) mags[i] = std::abs(c[i]);
        if (std::abs(sum_of_squares(mags) - 1.0) > norm_tolerance)
            throw shape_error("ProductCoefficients: sum of squared moduli != 1");
    }
};

inline ProductCoefficients product_coefficients(const std::vector<double>& theta0,
                                                const std::vector<double>& theta1) {
    if (theta0.empty() || theta0.size() != theta1.size())
        throw shape_error("product_coefficients: angle array length mismatch");
    const int n = static_cast<int>(theta0.size());
    if (n > max_qubits) throw size_limit_error("product_coefficients: n > 24");
    std::vector<std::complex<double>> c{1.0};
    for (int j = 0; j < n; ++j) {
        std::complex<double> e0 = unit_phasor(theta0[std::size_t(j)]);
        std::complex<double> e1 = unit_phasor(theta1[std::size_t(j)]);
        std::complex<double> plus = e0 + e1, minus = e0 - e1;
        std::vector<std::complex<double>> next(2 * c.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i] = c[i] * plus;
            next[i + c.size()] = c[i] * minus;
        }
        c.swap(next);
    }
    const double scale = std::ldexp(1.0, -n);
    for (auto& ci : c) ci *= scale;
    return ProductCoefficients(n, std::move(c), theta0, theta1);
}

// lambda_f = sum_eps f(eps) c(eps), rank-ascending.
inline std::complex<double> lambda_via_product(const SignFunction& f,
                                               const ProductCoefficients& pc) {
    if (f.n != pc.n) throw shape_error("lambda_via_product: dimension mismatch");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < pc.c.size(); ++i) acc += double(f.values[i]) * pc.c[i];
    return acc;
}

// R(t) = sum_eps f(eps) c(eps) exp(i rank(eps) t); R(0) = lambda_f bitwise
// (same summation order, and the t=0 phase factor is exactly 1).
inline std::complex<double> r_poly_eval(const SignFunction& f, const ProductCoefficients& pc,
                                        double t) {
    if (f.n != pc.n) throw shape_error("r_poly_eval: dimension mismatch");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < pc.c.size(); ++i)
        acc += double(f.values[i]) * pc.c[i] * std::polar(1.0, double(i) * t);
    return acc;
}

// Norm maximization over directions, reusing the coplanar machinery with
// the Fourier coefficients as the signed coefficient tensor.
inline MaxNormResult ww_max_norm_over_angles(const SignFunction& f, const OptimizerConfig& opt,
                                             const std::vector<AngleConfig>& warm_starts = {}) {
    return max_norm_over_angles(ww_spec(f), opt, warm_starts);
}

inline SignFunction sample_f(std::uint64_t seed, int n) {
    if (n < 1 || n > max_qubits) throw size_limit_error("sample_f: n outside [1, 24]");
    CounterRng rng(tagged_key(seed, seed_tag::sign_function));
    std::vector<std::int8_t> values(std::size_t{1} << n);
    for (auto& v : values) v = static_cast<std::int8_t>(rng.next_sign());
    return SignFunction(n, std::move(values));
}

// All 2^(2^n) sign functions, in ascending order of the packed bit pattern
// (bit rank(eps) set <=> f(eps) = -1).
inline std::vector<SignFunction> enumerate_f(int n) {
    if (n < 1 || n > 4) throw size_limit_error("enumerate_f: n outside [1, 4]");
    const std::size_t points = std::size_t{1} << n;
    const std::uint64_t count = std::uint64_t{1} << points;
    std::vector<SignFunction> out;
    out.reserve(count);
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        std::vector<std::int8_t> values(points);
        for (std::size_t i = 0; i < points; ++i)
            values[i] = (mask >> i) & 1 ? -1 : +1;
        out.emplace_back(n, std::move(values));
    }
    return out;
}

// Hex packing for serialization: bit i of the stream is (1 - f(i))/2, bytes
// little-endian in rank, two lowercase hex digits per byte.
inline std::string pack_hex(const SignFunction& f) {
    static constexpr char digits[] = "0123456789abcdef";
    std::vector<unsigned char> bytes((f.values.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] < 0) bytes[i / 8] |= static_cast<unsigned char>(1u << (i % 8));
    std::string out;
    out.reserve(2 * bytes.size());
    for (unsigned char b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

inline SignFunction unpack_hex(int n, const std::string& hex) {
    if (n < 1 || n > max_qubits) throw size_limit_error("unpack_hex: n outside [1, 24]");
    const std::size_t points = std::size_t{1} << n;
    const std::size_t nbytes = (points + 7) / 8;
    if (hex.size() != 2 * nbytes) throw shape_error("unpack_hex: bad hex length");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw shape_error("unpack_hex: bad hex digit");
    };
    std::vector<std::int8_t> values(points);
    for (std::size_t i = 0; i < points; ++i) {
        int byte = nibble(hex[2 * (i / 8)]) << 4 | nibble(hex[2 * (i / 8) + 1]);
        values[i] = (byte >> (i % 8)) & 1 ? -1 : +1;
    }
    for (std::size_t i = points; i < 8 * nbytes; ++i) {
        std::size_t byte = i / 8;
        int val = nibble(hex[2 * byte]) << 4 | nibble(hex[2 * byte + 1]);
        if ((val >> (i % 8)) & 1) throw shape_error("unpack_hex: nonzero padding bits");
    }
    return SignFunction(n, std::move(values));
}

} // namespace bellops
