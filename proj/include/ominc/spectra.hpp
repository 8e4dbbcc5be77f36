#pragma once

#include "ominc/core.hpp"
#include "ominc/response.hpp"

namespace ominc {

// Symmetrized input-noise matrix of a (possibly squeezed) vacuum:
//   S_XX = (cosh 2r - cos(theta) sinh 2r)/2
//   S_YY = (cosh 2r + cos(theta) sinh 2r)/2
//   S_XY = -(sin(theta) sinh 2r)/2
// Minimum-uncertainty: S_XX S_YY - S_XY^2 = 1/4 for every (r, theta).
struct InputNoise {
  double sxx = 0.5;
  double sxy = 0.0;
  double syy = 0.5;
};

InputNoise input_noise(double r, double theta);

// Force-equivalent PSD of the detected phase quadrature (natural units;
// multiply by hbar for N^2/Hz):
//   S_FF = [ |yy|^2 S_YY + |yx|^2 S_XX + 2 Re(yx yy*) S_XY ] / |yf|^2
//        + (1 - eta) / (2 eta |yf|^2)
// All three quadrature terms are referred to the force port, so the breakdown
// columns sum exactly to the total.  theta_used records the angle the
// squeezing policy resolved to at this frequency.
struct ForcePsdPoint {
  double nu = 0.0; // rad/s
  double total = 0.0;
  double shot = 0.0;       // |yy|^2 S_YY / |yf|^2
  double backaction = 0.0; // |yx|^2 S_XX / |yf|^2
  double cross = 0.0;      // 2 Re(yx yy*) S_XY / |yf|^2
  double loss = 0.0;       // (1-eta)/(2 eta |yf|^2)
  double theta_used = 0.0; // rad
};

// Throws SingularError when the readout coupling vanishes (the
// force-equivalent noise diverges).
ForcePsdPoint force_psd(const SensorConfig& config, double nu);
double force_psd_total(const SensorConfig& config, double nu);

// Large-coupling expansion of the frequency-dependent-squeezing PSD
// (mid-band form; exact in r at the expansion order used):
//   S = e^{-2r} [ m^2((nu^2-omega_m^2)^2 + e^{4r} gamma^2 nu^2)/(4 g^2) + g^2 ]
// i.e. the coherent PSD with gamma -> e^{2r} gamma in the shot term, all
// scaled by e^{-2r}.  Cavity readouts enter through g^2 = 4 g_c^2 / kappa.
double asymptotic_psd(const SensorConfig& config, double nu);

// Loss/coupling rescaling of the coherent readout:
//   S_FF(nu; eta, eta^{-1/4} g) = eta^{-1/2} S_FF(nu; 1, g)
// Returns both sides (they agree to machine precision); the loss+shot part of
// the lhs equals eta^{-1/2} times the shot part of the rhs.
struct RescalingCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_shot_plus_loss = 0.0;
  double rhs_shot_scaled = 0.0;
};

RescalingCheck lossy_coherent_rescaling_check(const SensorConfig& config,
                                              double nu);

} // namespace ominc
