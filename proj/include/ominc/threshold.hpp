#pragma once

#include <string>
#include <vector>

#include "ominc/core.hpp"
#include "ominc/quadrature.hpp"

namespace ominc {

// Minimum detectable momentum kick of the optimal (matched) filter:
//   delta_p = [ integral dnu/(2 pi) 1/S_FF(nu) over the full line ]^{-1/2}
//           = [ (1/pi) int_0^inf dnu / S_FF(nu) ]^{-1/2}
// (S_FF is even in nu).  Natural units; multiply by sqrt(hbar) for kg m/s.
struct ThresholdResult {
  double delta_p = 0.0;        // natural units, = integral_value^{-1/2}
  double ratio_to_sql = 0.0;   // delta_p / sqrt(m omega_m)
  double integral_value = 0.0; // int dnu/(2 pi S_FF)
  double error_estimate = 0.0; // absolute error of integral_value
  long evaluations = 0;
  std::vector<std::string> regime_flags; // subset of {"low_q","loss_limited"}
};

// Throws SingularError for gamma = 0 (undamped resonance; the stationary
// matched-filter picture does not apply) and for zero coupling.
ThresholdResult momentum_threshold(const SensorConfig& config,
                                   const QuadratureSpec& spec = {});

// Convenience: matched-filter SNR for a kick of size delta_p_signal,
// SNR = delta_p_signal / delta_p.
double snr_optimal(const SensorConfig& config, double delta_p_signal,
                   const QuadratureSpec& spec = {});

// Minimize delta_p over the readout coupling g in [g_lo, g_hi] (slab g, or the
// bad-cavity-equivalent g for a cavity readout -- the cavity's g_c is scaled
// accordingly).  Golden-section search on ln g refined until the relative
// improvement drops below 1e-6; because the objective is flat over a wide
// plateau, the reported optimum is the SMALLEST g whose delta_p lies within
// 0.5% of the best value found (plateau-left edge).  regime flags:
//   sql_plateau       plateau wider than a factor 2 in g
//   squeezing_limited r > 0 and squeezing (not loss) sets the floor
//   loss_limited      (1-eta) e^{2r} / eta >= 1
//   low_q             r > 0 and e^{2r} >= Q (squeezing floor 1/sqrt(Q) regime)
struct OptimizeResult {
  double g_opt = 0.0;        // plateau-left coupling (slab-equivalent units)
  ThresholdResult at_opt;    // threshold evaluated at g_opt
  double g_best = 0.0;       // argmin found by the search
  double delta_p_best = 0.0; // min delta_p found
  long threshold_evaluations = 0;
  std::vector<std::string> regime_flags;
};

OptimizeResult optimize_coupling(const SensorConfig& config, double g_lo,
                                 double g_hi, const QuadratureSpec& spec = {});
// Default bracket: [1e-2, 3e1 sqrt(Q) e^r] * g_star.
OptimizeResult optimize_coupling(const SensorConfig& config,
                                 const QuadratureSpec& spec = {});

// Optimized threshold across a grid of squeezing strengths and efficiencies,
// each point compared against the applicable closed-form scaling law.
struct ScalingRow {
  double r = 0.0;
  double eta = 1.0;
  double g_opt = 0.0;          // slab-equivalent, units of g_star
  double ratio_to_sql = 0.0;
  std::string law;             // sql | fd_squeezing | squeezing_floor |
                               // lossy_coherent | small_eta | near_lossless |
                               // intermediate
  double predicted_ratio = 0.0; // NaN when no law applies
  double deviation = 0.0;       // ratio/predicted - 1 (NaN when no law)
  std::vector<std::string> regime_flags;
};

// Law selection: eta = 1 and r = 0 -> sql (predicts 1); eta = 1 and r > 0 ->
// fd_squeezing e^{-r} when e^{2r} < Q, else squeezing_floor 1/sqrt(Q);
// eta < 1 and r = 0 -> lossy_coherent eta^{-1/4}; eta <= 0.1 and r > 0 ->
// small_eta eta^{-1/4} e^{-r/2}; 1 - eta <= 0.3 and r > 0 -> near_lossless
// [1 + (1-eta) e^{2r}]^{1/4} e^{-r}; otherwise intermediate (no prediction).
std::vector<ScalingRow> scaling_report(const SensorConfig& config,
                                       const std::vector<double>& r_values,
                                       const std::vector<double>& eta_values,
                                       const QuadratureSpec& spec = {});

} // namespace ominc
