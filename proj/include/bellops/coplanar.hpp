#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "bellops/angles.hpp"
#include "bellops/coefficients.hpp"
#include "bellops/errors.hpp"
#include "bellops/numeric.hpp"
#include "bellops/optimizer.hpp"
#include "bellops/quantum_state.hpp"
#include "bellops/rng.hpp"

namespace bellops {

// +-1 per site; indexes the two-dimensional invariant subspaces of a
// coplanar operator. omega and -omega carry equal eigenvalue magnitudes, so
// the canonical representative fixes site 0 to +1.
struct ParityVector {
    std::vector<std::int8_t> omega;

    int sites() const { return static_cast<int>(omega.size()); }
};

struct EigenRecord {
    ParityVector omega;
    double magnitude = 0.0; // |mu(omega)|
    double phase = 0.0;     // arg(mu(omega)) in [0, 2*pi)
};

namespace detail {

inline void check_coplanar_dims(const BellSpec& spec, const AngleConfig& angles) {
    if (angles.sites() != spec.n() || angles.settings() != spec.r())
        throw shape_error("coplanar: spec/angle dimension mismatch");
}

// Per-site, per-setting phasors exp(i * omega_j * t[j][k]).
inline std::vector<std::vector<std::complex<double>>>
phasor_tables(const AngleConfig& angles, const ParityVector& omega) {
    std::vector<std::vector<std::complex<double>>> p(angles.t.size());
    for (std::size_t j = 0; j < angles.t.size(); ++j) {
        p[j].reserve(angles.t[j].size());
        for (double t : angles.t[j])
            p[j].push_back(unit_phasor(omega.omega[j] < 0 ? -t : t));
    }
    return p;
}

// Intermediate butterfly tables peak at max(2^n, r^n) entries.
inline constexpr std::int64_t spectrum_entry_cap = std::int64_t{1} << 25;

} // namespace detail

// mu(omega) = sum_k +-c(k) exp(i sum_j omega_j t[j][k_j]), summed in
// rank-ascending order over all r^n multi-indices.
inline EigenRecord eigenvalue_magnitude(const BellSpec& spec, const AngleConfig& angles,
                                        const ParityVector& omega) {
    detail::check_coplanar_dims(spec, angles);
    if (omega.sites() != spec.n()) throw shape_error("eigenvalue_magnitude: omega length != n");
    for (auto w : omega.omega)
        if (w != 1 && w != -1) throw shape_error("eigenvalue_magnitude: omega entries must be +-1");
    auto p = detail::phasor_tables(angles, omega);
    const int n = spec.n(), r = spec.r();
    const auto& v = spec.coeffs.values;
    std::vector<int> digits(n, 0); // odometer over multi-index ranks
    std::complex<double> acc = 0.0;
    for (std::size_t rank = 0; rank < v.size(); ++rank) {
        std::complex<double> prod = p[0][digits[0]];
        for (int j = 1; j < n; ++j) prod *= p[j][digits[j]];
        acc += v[rank] * prod;
        for (int j = 0; j < n; ++j) {
            if (++digits[j] < r) break;
            digits[j] = 0;
        }
    }
    EigenRecord rec;
    rec.omega = omega;
    rec.magnitude = std::abs(acc);
    rec.phase = acc == 0.0 ? 0.0 : canonical_angle(std::arg(acc));
    return rec;
}

// All 2^(n-1) canonical eigenvalue records at once. Site-by-site phase
// contraction: O(n * 2^n) for r = 2 instead of 2^(n-1) separate sums.
inline std::vector<EigenRecord> eigen_spectrum(const BellSpec& spec, const AngleConfig& angles) {
    detail::check_coplanar_dims(spec, angles);
    const int n = spec.n(), r = spec.r();
    if (n > max_qubits) throw size_limit_error("eigen_spectrum: n > 24");
    std::int64_t peak = std::max(std::int64_t{1} << n, std::int64_t(spec.coeffs.values.size()));
    if (peak > detail::spectrum_entry_cap)
        throw size_limit_error("eigen_spectrum: intermediate table exceeds size limit");

    // cur[w + W*m]: w = parity bits of processed sites (bit j set <=> omega_j
    // = -1, W = 2^j), m = little-endian settings rank of the remaining sites.
    std::vector<std::complex<double>> cur(spec.coeffs.values.begin(), spec.coeffs.values.end());
    std::vector<std::complex<double>> next;
    std::int64_t rest = std::int64_t(spec.coeffs.values.size()); // r^(n-j)
    for (int j = 0; j < n; ++j) {
        const std::int64_t w_count = std::int64_t{1} << j;
        rest /= r;
        next.assign(std::size_t(2 * w_count * rest), 0.0);
        for (int k = 0; k < r; ++k) {
            std::complex<double> pp = unit_phasor(angles.t[j][k]);
            std::complex<double> pm = unit_phasor(-angles.t[j][k]);
            for (std::int64_t m = 0; m < rest; ++m) {
                const std::complex<double>* in = &cur[std::size_t(w_count * (k + r * m))];
                std::complex<double>* out = &next[std::size_t(2 * w_count * m)];
                for (std::int64_t w = 0; w < w_count; ++w) {
                    out[w] += pp * in[w];
                    out[w + w_count] += pm * in[w];
                }
            }
        }
        cur.swap(next);
    }

    std::vector<EigenRecord> records;
    records.reserve(std::size_t{1} << (n - 1));
    for (std::int64_t w = 0; w < (std::int64_t{1} << n); w += 2) { // bit 0 clear: omega_0 = +1
        EigenRecord rec;
        rec.omega.omega.resize(n);
        for (int j = 0; j < n; ++j) rec.omega.omega[j] = (w >> j) & 1 ? -1 : +1;
        rec.magnitude = std::abs(cur[std::size_t(w)]);
        rec.phase = cur[std::size_t(w)] == 0.0 ? 0.0 : canonical_angle(std::arg(cur[std::size_t(w)]));
        records.push_back(std::move(rec));
    }
    return records;
}

// Exact operator norm at fixed coplanar directions: max |mu| over canonical
// parity vectors.
inline double norm_fixed_angles(const BellSpec& spec, const AngleConfig& angles) {
    double best = 0.0;
    for (const auto& rec : eigen_spectrum(spec, angles)) best = std::max(best, rec.magnitude);
    return best;
}

struct MaxNormResult {
    double value = 0.0;
    AngleConfig angles;
};

namespace detail {

// S(x) = sum_k +-c(k) exp(i sum_j x[j*r+k_j]) and, optionally, the per-angle
// accumulations G[j*r+k] = sum over terms with k_j = k.
inline std::complex<double> omega_one_sum(const BellSpec& spec, const std::vector<double>& x,
                                          std::vector<std::complex<double>>* accum) {
    const int n = spec.n(), r = spec.r();
    const auto& v = spec.coeffs.values;
    std::vector<std::complex<double>> p(std::size_t(n) * r);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = unit_phasor(x[i]);
    std::vector<int> digits(n, 0);
    std::complex<double> acc = 0.0;
    for (std::size_t rank = 0; rank < v.size(); ++rank) {
        std::complex<double> prod = p[std::size_t(digits[0])];
        for (int j = 1; j < n; ++j) prod *= p[std::size_t(j) * r + digits[j]];
        std::complex<double> term = v[rank] * prod;
        acc += term;
        if (accum)
            for (int j = 0; j < n; ++j) (*accum)[std::size_t(j) * r + digits[j]] += term;
        for (int j = 0; j < n; ++j) {
            if (++digits[j] < r) break;
            digits[j] = 0;
        }
    }
    return acc;
}

inline std::vector<double> flatten_angles(const AngleConfig& a) {
    std::vector<double> x;
    x.reserve(std::size_t(a.sites()) * a.settings());
    for (const auto& site : a.t) x.insert(x.end(), site.begin(), site.end());
    return x;
}

inline AngleConfig unflatten_angles(const std::vector<double>& x, int n, int r) {
    std::vector<std::vector<double>> t(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
        t[std::size_t(j)].assign(x.begin() + std::ptrdiff_t(j) * r,
                                 x.begin() + std::ptrdiff_t(j + 1) * r);
    return AngleConfig(std::move(t));
}

} // namespace detail

// Multi-start projected gradient ascent on the r*n torus, maximizing the
// parity-(+1,...,+1) magnitude (any other parity is the same function under
// per-site sign flips of the angles). The reported value is re-evaluated by
// norm_fixed_angles at the returned angles, so it is always attained. It is
// a lower bound on the true supremum. Ties between starts resolve to the
// lexicographically smallest angle vector.
inline MaxNormResult max_norm_over_angles(const BellSpec& spec, const OptimizerConfig& opt,
                                          const std::vector<AngleConfig>& warm_starts = {}) {
    const int n = spec.n(), r = spec.r();
    if (n > max_qubits) throw size_limit_error("max_norm_over_angles: n > 24");
    if (opt.starts < 0) throw config_error("max_norm_over_angles: starts must be >= 0");
    if (opt.starts == 0 && warm_starts.empty())
        throw config_error("max_norm_over_angles: no starting points");
    const std::size_t dim = std::size_t(n) * r;

    auto value = [&](const std::vector<double>& x) {
        return std::norm(detail::omega_one_sum(spec, x, nullptr));
    };
    std::vector<std::complex<double>> accum(dim);
    auto gradient = [&](const std::vector<double>& x, std::vector<double>& g) {
        std::fill(accum.begin(), accum.end(), std::complex<double>(0.0));
        std::complex<double> s = detail::omega_one_sum(spec, x, &accum);
        for (std::size_t i = 0; i < dim; ++i)
            g[i] = -2.0 * std::imag(std::conj(s) * accum[i]);
    };

    // Starting points: caller warm starts, then deterministic coarse
    // patterns, then seeded uniform draws.
    std::vector<std::vector<double>> starts;
    for (const auto& w : warm_starts) {
        if (w.sites() != n || w.settings() != r)
            throw shape_error("max_norm_over_angles: warm start dimension mismatch");
        starts.push_back(detail::flatten_angles(w));
    }
    static constexpr double spacings[4] = {pi / 2.0, pi / 4.0, 3.0 * pi / 4.0, pi};
    for (int i = 0; i < std::min(opt.starts, 8); ++i) {
        std::vector<double> x(dim);
        double offset = (i / 4) ? pi / 4.0 : 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < r; ++k)
                x[std::size_t(j) * r + k] = canonical_angle(k * spacings[i % 4] + j * offset);
        starts.push_back(std::move(x));
    }
    CounterRng rng(tagged_key(opt.seed, seed_tag::optimizer));
    for (int i = 8; i < opt.starts; ++i) {
        std::vector<double> x(dim);
        for (auto& xi : x) xi = rng.next_unit() * two_pi;
        starts.push_back(std::move(x));
    }

    bool have_best = false;
    MaxNormResult best;
    std::vector<double> best_flat;
    for (auto& x : starts) {
        ascend(x, value, gradient, opt.max_iters, opt.grad_tol);
        AngleConfig angles = detail::unflatten_angles(x, n, r);
        double attained = norm_fixed_angles(spec, angles);
        std::vector<double> flat = detail::flatten_angles(angles); // canonicalized
        bool take = !have_best || attained > best.value ||
                    (attained == best.value && flat < best_flat);
        if (take) {
            best.value = attained;
            best.angles = std::move(angles);
            best_flat = std::move(flat);
            have_best = true;
        }
    }
    return best;
}

// (e^(i*phase)|omega> + |-omega>)/sqrt(2); omega_j = +1 is bit j clear.
inline QuantumState eigenvector(const ParityVector& omega, double phase) {
    const int n = omega.sites();
    if (n < 1 || n > max_qubits) throw size_limit_error("eigenvector: n outside [1, 24]");
    std::size_t rank_omega = 0;
    for (int j = 0; j < n; ++j) {
        if (omega.omega[j] != 1 && omega.omega[j] != -1)
            throw shape_error("eigenvector: omega entries must be +-1");
        if (omega.omega[j] < 0) rank_omega |= std::size_t{1} << j;
    }
    std::vector<std::complex<double>> amps(std::size_t{1} << n, 0.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    amps[rank_omega] = unit_phasor(phase) * inv_sqrt2;
    amps[((std::size_t{1} << n) - 1) ^ rank_omega] = inv_sqrt2;
    return QuantumState(n, std::move(amps));
}

} // namespace bellops
