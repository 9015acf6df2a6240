#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "bellops/errors.hpp"

namespace bellops {

// Shared knobs for the multi-start ascent methods. `starts` counts generated
// starting points (deterministic coarse patterns first, then seeded random
// ones); callers may pass extra warm starts on top.
struct OptimizerConfig {
    int starts = 64;
    int max_iters = 10000;
    double grad_tol = 1e-9;
    std::uint64_t seed = 0;
};

// Backtracking gradient ascent, maximizing `value`. `gradient(x, g)` fills g.
// Stops on gradient infinity-norm <= grad_tol, on max_iters, or when no step
// along the gradient improves the objective. Returns the best value reached;
// x holds the corresponding point.
template <class Value, class Gradient>
double ascend(std::vector<double>& x, Value&& value, Gradient&& gradient,
              int max_iters, double grad_tol) {
    const std::size_t dim = x.size();
    std::vector<double> g(dim), trial(dim);
    double fx = value(x);
    if (!std::isfinite(fx)) throw numeric_error("ascend: non-finite objective");
    double step = 0.1;
    for (int iter = 0; iter < max_iters; ++iter) {
        gradient(x, g);
        double gn = 0.0;
        for (double gi : g) gn = std::max(gn, std::abs(gi));
        if (!std::isfinite(gn)) throw numeric_error("ascend: non-finite gradient");
        if (gn <= grad_tol) break;
        bool improved = false;
        for (int halvings = 0; halvings < 60; ++halvings) {
            for (std::size_t i = 0; i < dim; ++i) trial[i] = x[i] + step * g[i];
            double ft = value(trial);
            if (ft > fx + 1e-14) {
                x.swap(trial);
                fx = ft;
                step *= 2.0;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return fx;
}

} // namespace bellops
