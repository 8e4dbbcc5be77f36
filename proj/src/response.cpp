#include "ominc/response.hpp"

#include <cmath>

#include "ominc/constants.hpp"
#include "ominc/errors.hpp"

namespace ominc {

std::complex<double> mechanical_susceptibility(const MechanicalOscillator& osc,
                                               double nu) {
  const double re = osc.omega_m * osc.omega_m - nu * nu;
  return 1.0 / (osc.mass * std::complex<double>(re, osc.gamma * nu));
}

std::complex<double> cavity_susceptibility(double kappa, double nu) {
  return 1.0 / std::complex<double>(-0.5 * kappa, nu);
}

TransferTriple transfer_functions(const SensorConfig& config, double nu) {
  const auto cm = mechanical_susceptibility(config.oscillator, nu);
  TransferTriple t;
  if (const auto* slab = std::get_if<SlabReadout>(&config.readout)) {
    const double g = slab->g;
    t.yy = 1.0;
    t.yx = -2.0 * g * g * cm;
    t.yf = std::sqrt(2.0) * g * cm;
  } else {
    const auto& cav = std::get<CavityReadout>(config.readout);
    const auto cc = cavity_susceptibility(cav.kappa, nu);
    const double gc2 = cav.g_c * cav.g_c;
    t.yy = 1.0 + cav.kappa * cc; // = (i nu + kappa/2)/(i nu - kappa/2), |.| = 1
    t.yx = -2.0 * cav.kappa * gc2 * cc * cc * cm;
    t.yf = std::sqrt(2.0 * cav.kappa * gc2) * cc * cm;
  }
  return t;
}

double optimal_angle(const TransferTriple& t) {
  // Detected noise as a function of theta is
  //   N(theta) = cosh(2r)(|yx|^2+|yy|^2)/2
  //            + sinh(2r)[ (|yy|^2-|yx|^2) cos(theta) - 2 Re(yx yy*) sin(theta) ]/2
  // so the stationary angles are theta0 = atan2(2 Re(yx yy*), |yx|^2 - |yy|^2)
  // and theta0 + pi.  Pick the branch with the smaller bracket.
  const double x = std::norm(t.yx) - std::norm(t.yy);
  const double y = 2.0 * std::real(t.yx * std::conj(t.yy));
  if (x == 0.0 && y == 0.0) return 0.0; // degenerate: every angle equivalent
  const double theta0 = std::atan2(y, x);
  const auto bracket = [&](double th) {
    return -x * std::cos(th) - y * std::sin(th);
  };
  const double alt = theta0 > 0.0 ? theta0 - kPi : theta0 + kPi;
  return bracket(theta0) <= bracket(alt) ? theta0 : alt;
}

double optimal_angle(const SensorConfig& config, double nu) {
  if (slab_equivalent_g(config.readout) <= 0.0)
    throw SingularError("optimal squeezing angle undefined at zero coupling");
  return optimal_angle(transfer_functions(config, nu));
}

} // namespace ominc
