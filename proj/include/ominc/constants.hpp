#pragma once

// Internal computations use hbar = c = 1 with masses in kg and rates in rad/s.
// In that convention every spectral formula below is identical to its SI form;
// hbar and c reappear only at the I/O boundary:
//   S_FF[SI, N^2/Hz]      = hbar * S_FF[natural]
//   delta_p[SI, kg m/s]   = sqrt(hbar) * delta_p[natural]
//   coupling from power   needs c (and omega_0 = 2 pi c / lambda) explicitly.

namespace ominc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 1.054571817e-34;    // J s (CODATA 2018)
inline constexpr double kSpeedOfLight = 299792458.0; // m/s (exact)

} // namespace ominc
