#pragma once

#include <cstdint>
#include <vector>

#include "bellops/errors.hpp"
#include "bellops/numeric.hpp"

namespace bellops {

// Joint setting choice (k_1, ..., k_n): site j picks setting k_j in [0, r).
// Sites and settings are 0-based throughout.
struct MultiIndex {
    std::vector<int> settings;

    int sites() const { return static_cast<int>(settings.size()); }
};

// Little-endian mixed-radix rank: site 0 is the least significant digit.
inline std::int64_t rank(const MultiIndex& m, int r) {
    if (r < 1) throw domain_error("rank: r must be >= 1");
    std::int64_t acc = 0;
    std::int64_t place = 1;
    for (int k : m.settings) {
        if (k < 0 || k >= r) throw invalid_index_error("rank: setting out of [0, r)");
        acc += std::int64_t(k) * place;
        place *= r;
    }
    return acc;
}

inline MultiIndex unrank(std::int64_t value, int n, int r) {
    if (n < 0 || r < 1) throw domain_error("unrank: need n >= 0, r >= 1");
    std::int64_t total = checked_pow(r, n);
    if (value < 0 || value >= total) throw invalid_index_error("unrank: rank out of range");
    MultiIndex m;
    m.settings.resize(n);
    for (int j = 0; j < n; ++j) {
        m.settings[j] = static_cast<int>(value % r);
        value /= r;
    }
    return m;
}

} // namespace bellops
