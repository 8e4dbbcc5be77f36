#pragma once

#include <cmath>

#include "ominc/constants.hpp"
#include "ominc/core.hpp"

namespace fx {

// 1 fg membrane, omega_m/2pi = 100 kHz, Q = 1e4 -- the default parameter set.
inline ominc::MechanicalOscillator membrane() {
  return {1e-18, 2.0 * ominc::kPi * 1e5, 2.0 * ominc::kPi * 10.0};
}

// Same mode at Q = 100 (fast threshold integrals, affordable simulations).
inline ominc::MechanicalOscillator membrane_q100() {
  return {1e-18, 2.0 * ominc::kPi * 1e5, 2.0 * ominc::kPi * 1e3};
}

inline ominc::SensorConfig slab_config(const ominc::MechanicalOscillator& osc,
                                       double g_over_gstar = 1.0) {
  ominc::SensorConfig cfg;
  cfg.oscillator = osc;
  cfg.readout = ominc::SlabReadout{g_over_gstar * ominc::g_star(osc), {}};
  return cfg;
}

// Cavity deep in the bad-cavity regime with the same slab-equivalent g.
inline ominc::SensorConfig cavity_config(const ominc::MechanicalOscillator& osc,
                                         double g_over_gstar = 1.0,
                                         double kappa_over_omega = 1e4) {
  ominc::SensorConfig cfg;
  cfg.oscillator = osc;
  const double g = g_over_gstar * ominc::g_star(osc);
  const double kappa = kappa_over_omega * osc.omega_m;
  cfg.readout = ominc::CavityReadout{kappa, std::sqrt(g * g * kappa / 4.0)};
  return cfg;
}

} // namespace fx
