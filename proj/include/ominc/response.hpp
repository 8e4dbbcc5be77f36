#pragma once

#include <complex>

#include "ominc/core.hpp"

namespace ominc {

// chi_m(nu) = 1 / [m (omega_m^2 - nu^2 + i gamma nu)]   [s^2/kg]
// Purely imaginary on resonance; chi_m(-nu) = conj(chi_m(nu)).
std::complex<double> mechanical_susceptibility(const MechanicalOscillator& osc,
                                               double nu);

// chi_c(nu) = 1 / (i nu - kappa/2)   [s], zero-detuned cavity.
std::complex<double> cavity_susceptibility(double kappa, double nu);

// Linear response of the detected phase quadrature:
//   Y_out(nu) = chi_YY Y_in + chi_YX X_in + chi_YF F_ext
// slab:   chi_YY = 1,              chi_YX = -2 g^2 chi_m,
//         chi_YF = sqrt(2) g chi_m
// cavity: chi_YY = 1 + kappa chi_c (unit modulus),
//         chi_YX = -2 kappa g_c^2 chi_c^2 chi_m,
//         chi_YF = sqrt(2 kappa g_c^2) chi_c chi_m
struct TransferTriple {
  std::complex<double> yy;
  std::complex<double> yx;
  std::complex<double> yf;
};

TransferTriple transfer_functions(const SensorConfig& config, double nu);

// Squeezing angle minimizing the detected noise at frequency nu.  The
// stationarity condition tan(theta) = 2 Re[chi_YX chi_YY*] /
// (|chi_YX|^2 - |chi_YY|^2) has two branches pi apart; the minimizing one is
// selected by evaluating the noise quadratic at both.  Independent of r and of
// detection loss.  Throws SingularError when the readout coupling is zero.
// At the degenerate point (resonance with g = g_*, gamma -> 0) every angle is
// equivalent and 0 is returned.
double optimal_angle(const SensorConfig& config, double nu);
double optimal_angle(const TransferTriple& triple);

} // namespace ominc
