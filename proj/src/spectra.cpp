#include "ominc/spectra.hpp"

#include <cmath>

#include "ominc/errors.hpp"

namespace ominc {

InputNoise input_noise(double r, double theta) {
  InputNoise n;
  const double ch = std::cosh(2.0 * r), sh = std::sinh(2.0 * r);
  n.sxx = 0.5 * (ch - std::cos(theta) * sh);
  n.syy = 0.5 * (ch + std::cos(theta) * sh);
  n.sxy = -0.5 * std::sin(theta) * sh;
  return n;
}

ForcePsdPoint force_psd(const SensorConfig& config, double nu) {
  const TransferTriple t = transfer_functions(config, nu);
  const double ayf2 = std::norm(t.yf);
  if (ayf2 <= 0.0)
    throw SingularError(
        "force-equivalent PSD diverges at zero readout coupling");

  double r = 0.0, theta = 0.0;
  if (const auto* fixed = std::get_if<FixedAngle>(&config.squeezing)) {
    r = fixed->r;
    theta = fixed->theta;
  } else if (const auto* opt = std::get_if<OptimalAngle>(&config.squeezing)) {
    r = opt->r;
    theta = optimal_angle(t);
  }

  const InputNoise in = input_noise(r, theta);
  ForcePsdPoint p;
  p.nu = nu;
  p.theta_used = theta;
  p.shot = std::norm(t.yy) * in.syy / ayf2;
  p.backaction = std::norm(t.yx) * in.sxx / ayf2;
  p.cross = 2.0 * std::real(t.yx * std::conj(t.yy)) * in.sxy / ayf2;
  const double eta = config.detection.eta;
  p.loss = (1.0 - eta) / (2.0 * eta * ayf2);
  p.total = p.shot + p.backaction + p.cross + p.loss;
  return p;
}

double force_psd_total(const SensorConfig& config, double nu) {
  const auto* opt = std::get_if<OptimalAngle>(&config.squeezing);
  if (opt == nullptr) return force_psd(config, nu).total;

  // Frequency-dependent optimum in a cancellation-free form.  With
  // A = |yx|^2 + |yy|^2 and B = |yx^2 + yy^2| the minimum over theta is
  //   S* = (A cosh 2r - B sinh 2r) / (2 |yf|^2)
  //      = ((A - B) cosh 2r + B e^{-2r}) / (2 |yf|^2),
  // and A^2 - B^2 = 4 Im(yx yy*)^2 gives A - B without subtraction.  The
  // naive difference keeps only ~e^{-4r} of the operands, so its noise floor
  // defeats the quadrature error estimate once r >~ 4; this form holds to
  // machine precision for all r.
  const TransferTriple t = transfer_functions(config, nu);
  const double ayf2 = std::norm(t.yf);
  if (ayf2 <= 0.0)
    throw SingularError(
        "force-equivalent PSD diverges at zero readout coupling");
  const double a = std::norm(t.yx) + std::norm(t.yy);
  const double b = std::abs(t.yx * t.yx + t.yy * t.yy);
  const double im = std::imag(t.yx * std::conj(t.yy));
  const double a_minus_b = a + b > 0.0 ? 4.0 * im * im / (a + b) : 0.0;
  const double bracket =
      a_minus_b * std::cosh(2.0 * opt->r) + b * std::exp(-2.0 * opt->r);
  const double eta = config.detection.eta;
  return (0.5 * bracket + 0.5 * (1.0 - eta) / eta) / ayf2;
}

double asymptotic_psd(const SensorConfig& config, double nu) {
  const double g = slab_equivalent_g(config.readout);
  if (g <= 0.0)
    throw SingularError("asymptotic PSD undefined at zero coupling");
  const double r = squeezing_r(config.squeezing);
  const auto& osc = config.oscillator;
  const double det = nu * nu - osc.omega_m * osc.omega_m;
  const double e2r = std::exp(2.0 * r);
  const double shot = osc.mass * osc.mass *
                      (det * det + e2r * e2r * osc.gamma * osc.gamma * nu * nu) /
                      (4.0 * g * g);
  return (shot + g * g) / e2r;
}

RescalingCheck lossy_coherent_rescaling_check(const SensorConfig& config,
                                              double nu) {
  const double eta = config.detection.eta;
  const double boost = std::pow(eta, -0.25);

  SensorConfig boosted = config; // lossy, native coupling raised by eta^{-1/4}
  boosted.squeezing = NoSqueezing{};
  if (auto* slab = std::get_if<SlabReadout>(&boosted.readout))
    slab->g *= boost;
  else
    std::get<CavityReadout>(boosted.readout).g_c *= boost;

  SensorConfig lossless = config; // eta = 1 at the original coupling
  lossless.squeezing = NoSqueezing{};
  lossless.detection.eta = 1.0;

  const ForcePsdPoint lhs = force_psd(boosted, nu);
  const ForcePsdPoint rhs = force_psd(lossless, nu);
  RescalingCheck c;
  c.lhs = lhs.total;
  c.rhs = rhs.total / std::sqrt(eta);
  c.lhs_shot_plus_loss = lhs.shot + lhs.loss;
  c.rhs_shot_scaled = rhs.shot / std::sqrt(eta);
  return c;
}

} // namespace ominc
