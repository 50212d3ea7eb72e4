// constants.hpp: CODATA 2018 exact/recommended values used throughout

#pragma once

namespace aqd::constants {

inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double k_B = 1.380649e-23;      // J/K (exact)
inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace aqd::constants
