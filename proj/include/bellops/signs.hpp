#pragma once

#include <cstdint>
#include <vector>

#include "bellops/numeric.hpp"
#include "bellops/rng.hpp"

namespace bellops {

// One point of the sign probability space: r^n i.i.d. uniform +-1 values,
// reproducible from the seed alone.
struct SignAssignment {
    std::uint64_t seed = 0;
    int n = 0;
    int r = 0;
    std::vector<std::int8_t> signs; // entries are exactly -1 or +1
};

inline SignAssignment sample_signs(std::uint64_t master_seed, int n, int r) {
    if (n < 1 || r < 1) throw domain_error("sample_signs: need n >= 1, r >= 1");
    std::int64_t count = checked_pow(r, n); // throws size_limit_error on overflow
    SignAssignment out;
    out.seed = master_seed;
    out.n = n;
    out.r = r;
    out.signs.resize(static_cast<std::size_t>(count));
    CounterRng rng(tagged_key(master_seed, seed_tag::signs));
    for (auto& s : out.signs) s = static_cast<std::int8_t>(rng.next_sign());
    return out;
}

} // namespace bellops
