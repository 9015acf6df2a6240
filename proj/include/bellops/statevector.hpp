#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "bellops/angles.hpp"
#include "bellops/coefficients.hpp"
#include "bellops/coplanar.hpp"
#include "bellops/errors.hpp"
#include "bellops/numeric.hpp"
#include "bellops/optimizer.hpp"
#include "bellops/quantum_state.hpp"
#include "bellops/rng.hpp"

namespace bellops {

namespace detail {

inline void apply_one_site_into(const std::vector<std::complex<double>>& in, int n, int site,
                                const std::array<std::complex<double>, 4>& m,
                                std::vector<std::complex<double>>& out) {
    const std::size_t stride = std::size_t{1} << site;
    const std::size_t size = std::size_t{1} << n;
    out.resize(size);
    for (std::size_t base = 0; base < size; base += 2 * stride)
        for (std::size_t low = 0; low < stride; ++low) {
            std::size_t i0 = base + low, i1 = i0 + stride;
            out[i0] = m[0] * in[i0] + m[1] * in[i1];
            out[i1] = m[2] * in[i0] + m[3] * in[i1];
        }
}

} // namespace detail

// One-site operator application (O(2^n)); `m` is row-major 2x2 acting on the
// site's {bit 0, bit 1} pair.
inline QuantumState apply_one_site(const QuantumState& state, int site,
                                   const std::array<std::complex<double>, 4>& m) {
    if (site < 0 || site >= state.n) throw invalid_index_error("apply_one_site: site out of range");
    std::vector<std::complex<double>> out;
    detail::apply_one_site_into(state.amplitudes, state.n, site, m, out);
    return QuantumState(state.n, std::move(out));
}

// Spin along (theta, phi): [[cos th, sin th e^(-i ph)], [sin th e^(i ph),
// -cos th]]. Hermitian and involutory, so it preserves state norm.
inline QuantumState apply_spin(const QuantumState& state, int site, double theta, double phi) {
    double c = std::cos(theta), s = std::sin(theta);
    std::complex<double> e = unit_phasor(phi);
    return apply_one_site(state, site,
                          {std::complex<double>(c, 0.0), s * std::conj(e), s * e,
                           std::complex<double>(-c, 0.0)});
}

namespace detail {

// r^n * n * 2^n contraction work cap; equals the cost at r = 2, n = 14.
inline constexpr double expectation_budget = 14.0 * 16384.0 * 16384.0;

inline void check_expectation_dims(const BellSpec& spec, const QuantumState& state,
                                   const PolarConfig& polar) {
    if (polar.sites() != spec.n() || polar.settings() != spec.r())
        throw shape_error("bell_expectation: spec/direction dimension mismatch");
    if (state.n != spec.n()) throw shape_error("bell_expectation: state has wrong qubit count");
    double cost = double(spec.coeffs.values.size()) * spec.n() *
                  double(std::size_t{1} << spec.n());
    if (cost > expectation_budget)
        throw size_limit_error("bell_expectation: r^n * n * 2^n exceeds compute budget");
}

} // namespace detail

// <Phi| sum_k +-c(k) sigma(a^1_{k_1}) x ... x sigma(a^n_{k_n}) |Phi>, term by
// term in rank-ascending order. The result must be real; imaginary residue
// above 1e-10 trips a numeric error.
inline double bell_expectation(const BellSpec& spec, const QuantumState& state,
                               const PolarConfig& polar) {
    detail::check_expectation_dims(spec, state, polar);
    const int n = spec.n(), r = spec.r();
    const auto& v = spec.coeffs.values;
    std::vector<std::complex<double>> buf, buf2;
    std::vector<int> digits(n, 0);
    std::complex<double> acc = 0.0;
    for (std::size_t rank = 0; rank < v.size(); ++rank) {
        buf = state.amplitudes;
        for (int j = 0; j < n; ++j) {
            double th = polar.theta[std::size_t(j)][std::size_t(digits[j])];
            double ph = polar.phi[std::size_t(j)][std::size_t(digits[j])];
            double c = std::cos(th), s = std::sin(th);
            std::complex<double> e = unit_phasor(ph);
            detail::apply_one_site_into(buf, n, j,
                                        {std::complex<double>(c, 0.0), s * std::conj(e), s * e,
                                         std::complex<double>(-c, 0.0)},
                                        buf2);
            buf.swap(buf2);
        }
        std::complex<double> term = 0.0;
        for (std::size_t i = 0; i < buf.size(); ++i)
            term += std::conj(state.amplitudes[i]) * buf[i];
        acc += v[rank] * term;
        for (int j = 0; j < n; ++j) {
            if (++digits[j] < r) break;
            digits[j] = 0;
        }
    }
    if (std::abs(acc.imag()) > 1e-10)
        throw numeric_error("bell_expectation: non-real expectation value");
    return acc.real();
}

struct MaxExpectationResult {
    double value = 0.0; // attained |<Phi|Q|Phi>|, re-evaluated at `polar`
    PolarConfig polar;
};

namespace detail {

inline std::vector<double> flatten_polar(const PolarConfig& p) {
    std::vector<double> x;
    const std::size_t half = p.theta.size() * p.theta.front().size();
    x.reserve(2 * half);
    for (const auto& site : p.theta) x.insert(x.end(), site.begin(), site.end());
    for (const auto& site : p.phi) x.insert(x.end(), site.begin(), site.end());
    return x;
}

inline PolarConfig unflatten_polar(const std::vector<double>& x, int n, int r) {
    std::vector<std::vector<double>> th(std::size_t(n)), ph(std::size_t(n));
    for (int j = 0; j < n; ++j) {
        th[std::size_t(j)].assign(x.begin() + std::ptrdiff_t(j) * r,
                                  x.begin() + std::ptrdiff_t(j + 1) * r);
        ph[std::size_t(j)].assign(x.begin() + std::ptrdiff_t(n + j) * r,
                                  x.begin() + std::ptrdiff_t(n + j + 1) * r);
    }
    return PolarConfig(std::move(th), std::move(ph));
}

} // namespace detail

// Multi-start ascent over all 2*r*n direction angles with central
// finite-difference gradients (step 1e-5), maximizing |<Phi|Q|Phi>|. Returns
// an attained lower bound on the maximum. Capped at n <= 10, r <= 3.
inline MaxExpectationResult max_expectation_over_angles(
    const BellSpec& spec, const QuantumState& state, const OptimizerConfig& opt,
    const std::vector<PolarConfig>& warm_starts = {}) {
    const int n = spec.n(), r = spec.r();
    if (n > 10 || r > 3)
        throw size_limit_error("max_expectation_over_angles: capped at n <= 10, r <= 3");
    if (opt.starts < 0) throw config_error("max_expectation_over_angles: starts must be >= 0");
    if (opt.starts == 0 && warm_starts.empty())
        throw config_error("max_expectation_over_angles: no starting points");
    const std::size_t dim = 2 * std::size_t(n) * r;

    auto value = [&](const std::vector<double>& x) {
        return std::abs(bell_expectation(spec, state, detail::unflatten_polar(x, n, r)));
    };
    constexpr double fd_step = 1e-5;
    auto gradient = [&](const std::vector<double>& x, std::vector<double>& g) {
        std::vector<double> probe = x;
        for (std::size_t i = 0; i < x.size(); ++i) {
            probe[i] = x[i] + fd_step;
            double up = value(probe);
            probe[i] = x[i] - fd_step;
            double down = value(probe);
            probe[i] = x[i];
            g[i] = (up - down) / (2.0 * fd_step);
        }
    };

    std::vector<std::vector<double>> starts;
    for (const auto& w : warm_starts) {
        if (w.sites() != n || w.settings() != r)
            throw shape_error("max_expectation_over_angles: warm start dimension mismatch");
        starts.push_back(detail::flatten_polar(w));
    }
    CounterRng rng(tagged_key(opt.seed, seed_tag::optimizer));
    for (int i = 0; i < opt.starts; ++i) {
        std::vector<double> x(dim);
        for (std::size_t q = 0; q < dim / 2; ++q) x[q] = rng.next_unit() * pi;
        for (std::size_t q = dim / 2; q < dim; ++q) x[q] = rng.next_unit() * two_pi;
        starts.push_back(std::move(x));
    }

    bool have_best = false;
    MaxExpectationResult best;
    std::vector<double> best_flat;
    for (auto& x : starts) {
        ascend(x, value, gradient, opt.max_iters, opt.grad_tol);
        PolarConfig polar = detail::unflatten_polar(x, n, r);
        double attained = std::abs(bell_expectation(spec, state, polar));
        std::vector<double> flat = detail::flatten_polar(polar);
        bool take = !have_best || attained > best.value ||
                    (attained == best.value && flat < best_flat);
        if (take) {
            best.value = attained;
            best.polar = std::move(polar);
            best_flat = std::move(flat);
            have_best = true;
        }
    }
    return best;
}

// The extremal two-setting baseline: recursion-built coefficients plus the
// coplanar angles at which the norm 2^((n-1)/2) is attained exactly.
struct MKSpec {
    BellSpec spec;
    AngleConfig optimal_angles;
};

// Coefficient recursion: beta_1 = (1, 0); beta_m(s, 0) = (beta_{m-1}(s) +
// beta_{m-1}(s with all bits flipped))/2 and beta_m(s, 1) likewise with a
// minus. All values are dyadic, so the unit normalization is exact.
inline MKSpec mk_spec(int n) {
    if (n < 2 || n > 20) throw domain_error("mk_spec: n outside [2, 20]");
    std::vector<double> beta{1.0, 0.0};
    for (int m = 2; m <= n; ++m) {
        const std::size_t half = beta.size();
        std::vector<double> next(2 * half);
        for (std::size_t s = 0; s < half; ++s) {
            next[s] = 0.5 * (beta[s] + beta[half - 1 - s]);
            next[s + half] = 0.5 * (beta[s] - beta[half - 1 - s]);
        }
        beta = std::move(next);
    }
    MKSpec out;
    out.spec = BellSpec(SignedCoefficients(n, 2, std::move(beta)));

    // Settings are a quarter turn apart at every site; the last site's
    // offset -(n-1)*pi/4 aligns the top eigenvalue's phase with GHZ.
    std::vector<std::vector<double>> t(std::size_t(n));
    for (int j = 0; j < n - 1; ++j) t[std::size_t(j)] = {0.0, pi / 2.0};
    double last = -(double(n) - 1.0) * pi / 4.0;
    t[std::size_t(n - 1)] = {last, last + pi / 2.0};
    out.optimal_angles = AngleConfig(std::move(t));
    return out;
}

} // namespace bellops
