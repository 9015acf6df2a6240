#pragma once

#include <complex>
#include <vector>

#include <json.hpp>

#include "bellops/angles.hpp"
#include "bellops/coefficients.hpp"
#include "bellops/errors.hpp"
#include "bellops/optimizer.hpp"
#include "bellops/quantum_state.hpp"
#include "bellops/werner_wolf.hpp"

namespace bellops {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline void to_json(ordered_json& j, const OptimizerConfig& c) {
    j = ordered_json{{"starts", c.starts},
                     {"max_iters", c.max_iters},
                     {"grad_tol", c.grad_tol},
                     {"seed", c.seed}};
}

inline void from_json(const json& j, OptimizerConfig& c) {
    c = OptimizerConfig{};
    if (j.contains("starts")) j.at("starts").get_to(c.starts);
    if (j.contains("max_iters")) j.at("max_iters").get_to(c.max_iters);
    if (j.contains("grad_tol")) j.at("grad_tol").get_to(c.grad_tol);
    if (j.contains("seed")) j.at("seed").get_to(c.seed);
}

inline void to_json(ordered_json& j, const AngleConfig& a) { j = a.t; }

inline void from_json(const json& j, AngleConfig& a) {
    a = AngleConfig(j.get<std::vector<std::vector<double>>>());
}

inline void to_json(ordered_json& j, const PolarConfig& p) {
    j = ordered_json{{"theta", p.theta}, {"phi", p.phi}};
}

inline void from_json(const json& j, PolarConfig& p) {
    p = PolarConfig(j.at("theta").get<std::vector<std::vector<double>>>(),
                    j.at("phi").get<std::vector<std::vector<double>>>());
}

// Amplitudes as [re, im] pairs in rank order.
inline void to_json(ordered_json& j, const QuantumState& s) {
    ordered_json amps = ordered_json::array();
    for (const auto& a : s.amplitudes) amps.push_back({a.real(), a.imag()});
    j = ordered_json{{"n", s.n}, {"amplitudes", std::move(amps)}};
}

inline void from_json(const json& j, QuantumState& s) {
    int n = j.at("n").get<int>();
    std::vector<std::complex<double>> amps;
    for (const auto& pair : j.at("amplitudes"))
        amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    s = QuantumState(n, std::move(amps));
}

inline void to_json(ordered_json& j, const SignFunction& f) {
    j = ordered_json{{"n", f.n}, {"f", pack_hex(f)}};
}

inline void from_json(const json& j, SignFunction& f) {
    f = unpack_hex(j.at("n").get<int>(), j.at("f").get<std::string>());
}

} // namespace bellops
