#pragma once

namespace bellops {

inline constexpr const char* version = "1.0.0";

// Base of the logarithm used by szk_bound and tail_probability; surfaced in
// output metadata because the bounds are only defined up to this choice.
inline constexpr const char* log_base = "natural";

} // namespace bellops
