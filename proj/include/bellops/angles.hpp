#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bellops/errors.hpp"
#include "bellops/numeric.hpp"
#include "bellops/rng.hpp"

namespace bellops {

// Coplanar measurement directions: site j, setting k gets an angle t[j][k]
// in the x-y plane. Stored canonically in [0, 2*pi).
struct AngleConfig {
    std::vector<std::vector<double>> t; // t[site][setting]

    AngleConfig() = default;
    explicit AngleConfig(std::vector<std::vector<double>> angles) : t(std::move(angles)) {
        if (t.empty()) throw shape_error("AngleConfig: need at least one site");
        std::size_t r = t.front().size();
        if (r == 0) throw shape_error("AngleConfig: need at least one setting per site");
        for (auto& site : t) {
            if (site.size() != r) throw shape_error("AngleConfig: ragged setting counts");
            for (double& a : site) {
                if (!std::isfinite(a)) throw shape_error("AngleConfig: non-finite angle");
                a = canonical_angle(a);
            }
        }
    }

    int sites() const { return static_cast<int>(t.size()); }
    int settings() const { return static_cast<int>(t.front().size()); }
};

// Unrestricted unit directions on the sphere: polar theta, azimuth phi
// per (site, setting), both stored canonically in [0, 2*pi).
struct PolarConfig {
    std::vector<std::vector<double>> theta; // theta[site][setting]
    std::vector<std::vector<double>> phi;   // phi[site][setting]

    PolarConfig() = default;
    PolarConfig(std::vector<std::vector<double>> th, std::vector<std::vector<double>> ph)
        : theta(std::move(th)), phi(std::move(ph)) {
        if (theta.empty() || theta.size() != phi.size())
            throw shape_error("PolarConfig: site count mismatch");
        std::size_t r = theta.front().size();
        if (r == 0) throw shape_error("PolarConfig: need at least one setting per site");
        for (std::size_t j = 0; j < theta.size(); ++j) {
            if (theta[j].size() != r || phi[j].size() != r)
                throw shape_error("PolarConfig: ragged setting counts");
            for (double& a : theta[j]) {
                if (!std::isfinite(a)) throw shape_error("PolarConfig: non-finite polar angle");
                a = canonical_angle(a);
            }
            for (double& a : phi[j]) {
                if (!std::isfinite(a)) throw shape_error("PolarConfig: non-finite azimuth");
                a = canonical_angle(a);
            }
        }
    }

    int sites() const { return static_cast<int>(theta.size()); }
    int settings() const { return static_cast<int>(theta.front().size()); }
};

// Lifts planar angles to the sphere's equator: theta = pi/2, phi = t.
inline PolarConfig embed_coplanar(const AngleConfig& a) {
    std::vector<std::vector<double>> th(a.t.size()), ph(a.t.size());
    for (std::size_t j = 0; j < a.t.size(); ++j) {
        th[j].assign(a.t[j].size(), pi / 2.0);
        ph[j] = a.t[j];
    }
    return PolarConfig(std::move(th), std::move(ph));
}

inline AngleConfig random_angles(int n, int r, std::uint64_t seed) {
    if (n < 1 || r < 1) throw domain_error("random_angles: need n >= 1, r >= 1");
    CounterRng rng(tagged_key(seed, seed_tag::angles));
    std::vector<std::vector<double>> t(static_cast<std::size_t>(n));
    for (auto& site : t) {
        site.resize(static_cast<std::size_t>(r));
        for (double& a : site) a = rng.next_unit() * two_pi;
    }
    return AngleConfig(std::move(t));
}

} // namespace bellops
