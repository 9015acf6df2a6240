#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "bellops/angles.hpp"
#include "bellops/coefficients.hpp"
#include "bellops/errors.hpp"
#include "bellops/numeric.hpp"
#include "bellops/quantum_state.hpp"
#include "bellops/rng.hpp"

namespace bellops {

inline constexpr int max_dense_qubits = 12;

// Spin along (sin th cos ph, sin th sin ph, cos th); Hermitian, involutory.
// Row-major 2x2.
inline std::array<std::complex<double>, 4> spin_matrix(double theta, double phi) {
    double c = std::cos(theta), s = std::sin(theta);
    std::complex<double> e = unit_phasor(phi);
    return {std::complex<double>(c, 0.0), s * std::conj(e), s * e, std::complex<double>(-c, 0.0)};
}

// Materializes the operator as a dense 2^n x 2^n row-major matrix by
// contracting one site at a time (cost O(r * 4^n) instead of O(r^n * 4^n)).
inline std::vector<std::complex<double>> dense_bell_matrix(const BellSpec& spec,
                                                           const PolarConfig& polar) {
    const int n = spec.n(), r = spec.r();
    if (polar.sites() != n || polar.settings() != r)
        throw shape_error("dense_bell_matrix: spec/direction dimension mismatch");
    if (n > max_dense_qubits) throw size_limit_error("dense_bell_matrix: n > 12");

    // cur[m] is the D x D partial operator for remaining-settings rank m.
    std::vector<std::vector<std::complex<double>>> cur(spec.coeffs.values.size());
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = {spec.coeffs.values[i]};
    std::size_t dim = 1;
    for (int j = 0; j < n; ++j) {
        std::size_t out_dim = 2 * dim;
        std::vector<std::vector<std::complex<double>>> next(cur.size() / std::size_t(r));
        for (std::size_t m = 0; m < next.size(); ++m) {
            std::vector<std::complex<double>> block(out_dim * out_dim, 0.0);
            for (int k = 0; k < r; ++k) {
                auto sigma = spin_matrix(polar.theta[std::size_t(j)][std::size_t(k)],
                                         polar.phi[std::size_t(j)][std::size_t(k)]);
                const auto& in = cur[m * std::size_t(r) + std::size_t(k)];
                // New site takes the high bit: block = sigma (x) in.
                for (std::size_t a = 0; a < 2; ++a)
                    for (std::size_t b = 0; b < 2; ++b) {
                        std::complex<double> sab = sigma[a * 2 + b];
                        if (sab == 0.0) continue;
                        for (std::size_t p = 0; p < dim; ++p)
                            for (std::size_t q = 0; q < dim; ++q)
                                block[(a * dim + p) * out_dim + (b * dim + q)] +=
                                    sab * in[p * dim + q];
                    }
            }
            next[m] = std::move(block);
        }
        cur = std::move(next);
        dim = out_dim;
    }
    return std::move(cur.front());
}

inline std::vector<std::complex<double>> apply_dense(const std::vector<std::complex<double>>& m,
                                                     const std::vector<std::complex<double>>& v) {
    std::size_t dim = v.size();
    if (m.size() != dim * dim) throw shape_error("apply_dense: dimension mismatch");
    std::vector<std::complex<double>> out(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        std::complex<double> acc = 0.0;
        const std::complex<double>* row = &m[i * dim];
        for (std::size_t k = 0; k < dim; ++k) acc += row[k] * v[k];
        out[i] = acc;
    }
    return out;
}

namespace detail {

inline double vec_norm(const std::vector<std::complex<double>>& v) {
    double ss = 0.0;
    for (const auto& x : v) ss += std::norm(x);
    return std::sqrt(ss);
}

} // namespace detail

// Spectral norm of a Hermitian matrix: power iteration on M^2 (so the +-
// eigenvalue pairs cannot cancel), with random restart on stagnation.
inline double dense_spectral_norm(const std::vector<std::complex<double>>& m, std::size_t dim) {
    if (m.size() != dim * dim) throw shape_error("dense_spectral_norm: dimension mismatch");
    constexpr int max_iters = 100000;
    constexpr double rel_tol = 1e-12;
    CounterRng rng(tagged_key(0x6F7261636C65ull, seed_tag::state));
    auto random_unit = [&] {
        std::vector<std::complex<double>> v(dim);
        for (auto& x : v) {
            auto [g0, g1] = rng.next_gaussian_pair();
            x = {g0, g1};
        }
        double nv = detail::vec_norm(v);
        for (auto& x : v) x /= nv;
        return v;
    };
    auto v = random_unit();
    double best_resid = std::numeric_limits<double>::infinity();
    int last_improvement = 0;
    for (int iter = 0; iter < max_iters; ++iter) {
        auto w = apply_dense(m, v);  // M v
        auto y = apply_dense(m, w);  // M^2 v
        double rho = 0.0;            // <v, M^2 v> = ||Mv||^2 >= 0
        for (const auto& x : w) rho += std::norm(x);
        double resid = 0.0;
        for (std::size_t i = 0; i < dim; ++i) resid += std::norm(y[i] - rho * v[i]);
        resid = std::sqrt(resid);
        if (resid <= rel_tol * std::max(rho, 1e-300)) return std::sqrt(rho);
        if (resid < 0.5 * best_resid) {
            best_resid = resid;
            last_improvement = iter;
        }
        double ny = detail::vec_norm(y);
        if (ny == 0.0 || iter - last_improvement > 2000) {
            v = random_unit(); // stagnation: restart from a fresh direction
            best_resid = std::numeric_limits<double>::infinity();
            last_improvement = iter;
            continue;
        }
        for (std::size_t i = 0; i < dim; ++i) v[i] = y[i] / ny;
    }
    throw convergence_error("dense_spectral_norm: power iteration did not converge");
}

inline double dense_norm_oracle(const BellSpec& spec, const PolarConfig& polar) {
    auto m = dense_bell_matrix(spec, polar);
    return dense_spectral_norm(m, std::size_t{1} << spec.n());
}

inline double dense_norm_oracle(const BellSpec& spec, const AngleConfig& angles) {
    return dense_norm_oracle(spec, embed_coplanar(angles));
}

} // namespace bellops
