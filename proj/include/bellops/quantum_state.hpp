#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "bellops/errors.hpp"
#include "bellops/numeric.hpp"

namespace bellops {

inline constexpr int max_qubits = 24;

// Pure n-qubit state. Basis index is little-endian: bit j is site j.
struct QuantumState {
    int n = 0;
    std::vector<std::complex<double>> amplitudes; // 2^n entries, unit norm

    QuantumState() = default;
    QuantumState(int n_, std::vector<std::complex<double>> amps)
        : n(n_), amplitudes(std::move(amps)) {
        if (n < 1 || n > max_qubits) throw size_limit_error("QuantumState: n outside [1, 24]");
        if (amplitudes.size() != (std::size_t{1} << n))
            throw shape_error("QuantumState: amplitude count != 2^n");
        double ss = 0.0, comp = 0.0;
        for (const auto& a : amplitudes) {
            double sq = std::norm(a);
            double t = ss + sq;
            comp += (ss >= sq) ? (ss - t) + sq : (sq - t) + ss;
            ss = t;
        }
        if (std::abs((ss + comp) - 1.0) > 1e-12)
            throw numeric_error("QuantumState: amplitudes are not unit-norm");
    }
};

// (|0...0> + |1...1>)/sqrt(2)
inline QuantumState ghz(int n) {
    if (n < 1 || n > max_qubits) throw size_limit_error("ghz: n outside [1, 24]");
    std::vector<std::complex<double>> amps(std::size_t{1} << n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    amps.front() = inv_sqrt2;
    amps.back() = inv_sqrt2;
    return QuantumState(n, std::move(amps));
}

// <a|b>, summed in basis-rank order.
inline std::complex<double> inner(const QuantumState& a, const QuantumState& b) {
    if (a.n != b.n) throw shape_error("inner: qubit count mismatch");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return acc;
}

} // namespace bellops
