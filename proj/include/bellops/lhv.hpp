#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bellops/coefficients.hpp"
#include "bellops/errors.hpp"
#include "bellops/numeric.hpp"
#include "bellops/rng.hpp"

namespace bellops {

inline constexpr int max_lhv_bits = 24; // 2^(r*n) enumeration guard

// Deterministic local strategy: x[site][setting] in {-1, +1}.
struct ClassicalAssignment {
    std::vector<std::vector<std::int8_t>> x;

    int sites() const { return static_cast<int>(x.size()); }
    int settings() const { return x.empty() ? 0 : static_cast<int>(x.front().size()); }
};

struct LhvResult {
    double value = 0.0; // |C(argmax)|, recomputed in rank-ascending order
    ClassicalAssignment argmax;
    bool exact = false;
};

// Signed value C = sum_k +-c(k) prod_j x[j][k_j], in rank-ascending order.
// The summation sequence matches eigenvalue_magnitude exactly, so at {0, pi}
// angle grids the two paths agree bitwise.
inline double evaluate_assignment(const BellSpec& spec, const ClassicalAssignment& a) {
    const int n = spec.n(), r = spec.r();
    if (a.sites() != n || a.settings() != r)
        throw shape_error("evaluate_assignment: dimension mismatch");
    const auto& v = spec.coeffs.values;
    std::vector<int> digits(n, 0);
    double acc = 0.0;
    for (std::size_t rank = 0; rank < v.size(); ++rank) {
        int prod = 1;
        for (int j = 0; j < n; ++j) prod *= a.x[std::size_t(j)][std::size_t(digits[j])];
        acc += v[rank] * double(prod);
        for (int j = 0; j < n; ++j) {
            if (++digits[j] < r) break;
            digits[j] = 0;
        }
    }
    return acc;
}

namespace detail {

// Shared incremental state: w[rank] = +-c(rank) * prod_j x[j][k_j] for the
// current assignment, total = sum w. Flipping variable (j, k) negates the
// r^(n-1) entries whose site-j digit is k.
struct LhvWork {
    const BellSpec* spec = nullptr;
    std::vector<double> w;
    std::vector<std::int8_t> x; // flat: x[j*r + k]
    double total = 0.0;

    explicit LhvWork(const BellSpec& s) : spec(&s) {}

    void reset(const std::vector<std::int8_t>& assignment) {
        const int n = spec->n(), r = spec->r();
        x = assignment;
        const auto& v = spec->coeffs.values;
        w.resize(v.size());
        std::vector<int> digits(n, 0);
        total = 0.0;
        for (std::size_t rank = 0; rank < v.size(); ++rank) {
            int prod = 1;
            for (int j = 0; j < n; ++j) prod *= x[std::size_t(j) * r + digits[j]];
            w[rank] = v[rank] * double(prod);
            total += w[rank];
            for (int j = 0; j < n; ++j) {
                if (++digits[j] < r) break;
                digits[j] = 0;
            }
        }
    }

    // Sum of w over ranks with digit j equal to k.
    double slice_sum(int bit) const {
        const int r = spec->r();
        const int j = bit / r, k = bit % r;
        std::int64_t inner = 1;
        for (int i = 0; i < j; ++i) inner *= r;
        const std::int64_t outer_stride = inner * r;
        const std::int64_t outer_count = std::int64_t(w.size()) / outer_stride;
        double acc = 0.0;
        for (std::int64_t hi = 0; hi < outer_count; ++hi) {
            const double* base = &w[std::size_t(hi * outer_stride + k * inner)];
            for (std::int64_t lo = 0; lo < inner; ++lo) acc += base[lo];
        }
        return acc;
    }

    void flip(int bit) {
        const int r = spec->r();
        const int j = bit / r, k = bit % r;
        std::int64_t inner = 1;
        for (int i = 0; i < j; ++i) inner *= r;
        const std::int64_t outer_stride = inner * r;
        const std::int64_t outer_count = std::int64_t(w.size()) / outer_stride;
        double delta = 0.0;
        for (std::int64_t hi = 0; hi < outer_count; ++hi) {
            double* base = &w[std::size_t(hi * outer_stride + k * inner)];
            for (std::int64_t lo = 0; lo < inner; ++lo) {
                delta += base[lo];
                base[lo] = -base[lo];
            }
        }
        total -= 2.0 * delta;
        x[std::size_t(bit)] = static_cast<std::int8_t>(-x[std::size_t(bit)]);
    }

    ClassicalAssignment assignment() const {
        const int n = spec->n(), r = spec->r();
        ClassicalAssignment a;
        a.x.resize(std::size_t(n));
        for (int j = 0; j < n; ++j)
            a.x[std::size_t(j)].assign(x.begin() + std::ptrdiff_t(j) * r,
                                       x.begin() + std::ptrdiff_t(j + 1) * r);
        return a;
    }
};

} // namespace detail

// Exact classical maximum of |C| over all 2^(r*n) assignments, enumerated in
// Gray-code order so each step touches only the r^(n-1) affected terms. Any
// candidate within a drift allowance of the running best is re-evaluated
// from scratch, so the returned value is exact despite the incremental
// updates.
inline LhvResult lhv_norm_exact(const BellSpec& spec) {
    const int n = spec.n(), r = spec.r();
    const int bits = n * r;
    if (bits > max_lhv_bits) throw size_limit_error("lhv_norm_exact: r*n > 24");

    detail::LhvWork work(spec);
    work.reset(std::vector<std::int8_t>(std::size_t(bits), 1));

    double coeff_mass = 0.0;
    for (double c : spec.coeffs.values) coeff_mass += std::abs(c);
    const double slack = 1e-6 * std::max(1.0, coeff_mass);

    LhvResult best;
    best.exact = true;
    best.value = std::abs(work.total);
    best.argmax = work.assignment();

    const std::uint64_t steps = std::uint64_t{1} << bits;
    for (std::uint64_t i = 1; i < steps; ++i) {
        work.flip(std::countr_zero(i));
        if (std::abs(work.total) + slack <= best.value) continue;
        double exact_total = evaluate_assignment(spec, work.assignment());
        work.total = exact_total; // discard accumulated drift
        if (std::abs(exact_total) > best.value) {
            best.value = std::abs(exact_total);
            best.argmax = work.assignment();
        }
    }
    return best;
}

// Best-of-restarts steepest-ascent bit-flip search; a scalable stand-in for
// the exact maximum. Never exceeds it. Ties between candidate flips resolve
// to the lowest (site, setting) index.
inline LhvResult lhv_norm_heuristic(const BellSpec& spec, int restarts, std::uint64_t seed) {
    const int n = spec.n(), r = spec.r();
    if (restarts < 1) throw config_error("lhv_norm_heuristic: restarts must be >= 1");
    const int bits = n * r;

    detail::LhvWork work(spec);
    CounterRng rng(tagged_key(seed, seed_tag::assignment));
    LhvResult best;
    best.exact = false;
    bool have_best = false;
    for (int restart = 0; restart < restarts; ++restart) {
        std::vector<std::int8_t> x0(std::size_t(bits));
        for (auto& b : x0) b = static_cast<std::int8_t>(rng.next_sign());
        work.reset(x0);
        for (;;) {
            int best_bit = -1;
            double best_gain = 1e-15;
            for (int b = 0; b < bits; ++b) {
                double flipped = work.total - 2.0 * work.slice_sum(b);
                double gain = std::abs(flipped) - std::abs(work.total);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_bit = b;
                }
            }
            if (best_bit < 0) break;
            work.flip(best_bit);
        }
        double value = std::abs(evaluate_assignment(spec, work.assignment()));
        if (!have_best || value > best.value) {
            best.value = value;
            best.argmax = work.assignment();
            have_best = true;
        }
    }
    return best;
}

} // namespace bellops
