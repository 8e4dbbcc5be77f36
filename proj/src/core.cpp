#include "ominc/core.hpp"

#include <cmath>

#include "ominc/constants.hpp"
#include "ominc/errors.hpp"

namespace ominc {

void validate(const MechanicalOscillator& osc) {
  if (!(osc.mass > 0.0))
    throw ConfigError("[system].mass", "must be positive");
  if (!(osc.omega_m > 0.0))
    throw ConfigError("[system].omega_m", "must be positive");
  if (!(osc.gamma >= 0.0))
    throw ConfigError("[system].gamma", "must be nonnegative");
}

double squeezing_r(const SqueezingPolicy& policy) {
  if (std::holds_alternative<NoSqueezing>(policy)) return 0.0;
  if (const auto* fixed = std::get_if<FixedAngle>(&policy)) return fixed->r;
  return std::get<OptimalAngle>(policy).r;
}

void validate(const SensorConfig& config) {
  validate(config.oscillator);
  if (const auto* slab = std::get_if<SlabReadout>(&config.readout)) {
    if (!(slab->g >= 0.0))
      throw ConfigError("[drive].g", "must be nonnegative");
  } else {
    const auto& cav = std::get<CavityReadout>(config.readout);
    if (!(cav.kappa > 0.0))
      throw ConfigError("[system].kappa", "must be positive");
    if (!(cav.g_c >= 0.0))
      throw ConfigError("[drive].g_c", "must be nonnegative");
  }
  if (squeezing_r(config.squeezing) < 0.0)
    throw ConfigError("[squeezing].r", "must be nonnegative");
  if (!(config.detection.eta > 0.0 && config.detection.eta <= 1.0))
    throw ConfigError("[detection].eta", "must lie in (0, 1]");
}

double slab_equivalent_g(const Readout& readout) {
  if (const auto* slab = std::get_if<SlabReadout>(&readout)) return slab->g;
  const auto& cav = std::get<CavityReadout>(readout);
  return std::sqrt(4.0 * cav.g_c * cav.g_c / cav.kappa);
}

SensorConfig with_slab_equivalent_g(const SensorConfig& config, double g) {
  SensorConfig out = config;
  if (auto* slab = std::get_if<SlabReadout>(&out.readout)) {
    slab->g = g;
  } else {
    auto& cav = std::get<CavityReadout>(out.readout);
    cav.g_c = std::sqrt(g * g * cav.kappa / 4.0);
  }
  return out;
}

double sql_threshold(const MechanicalOscillator& osc) {
  return std::sqrt(osc.mass * osc.omega_m);
}

double sql_threshold_si(const MechanicalOscillator& osc) {
  return std::sqrt(kHbar * osc.mass * osc.omega_m);
}

double g_star(const MechanicalOscillator& osc) {
  if (osc.gamma <= 0.0)
    throw SingularError("g_star undefined for an undamped oscillator (gamma = 0)");
  return std::sqrt(0.5 * osc.mass * osc.gamma * osc.omega_m);
}

CouplingResult coupling_from_power(double power_watt, const SlabProvenance& slab,
                                   bool thin_slab_form) {
  if (!(power_watt >= 0.0))
    throw ConfigError("[drive].power", "must be nonnegative");
  if (!(slab.chi_e > 0.0))
    throw ConfigError("[system].chi_e", "must be positive");
  if (!(slab.ell > 0.0))
    throw ConfigError("[system].ell", "must be positive");
  if (!(slab.wavelength > 0.0))
    throw ConfigError("[system].wavelength", "must be positive");

  const double omega0 = 2.0 * kPi * kSpeedOfLight / slab.wavelength; // rad/s
  const double phase = omega0 * slab.ell / kSpeedOfLight;            // omega_0 ell / c
  CouplingResult out;
  const double amp = std::sqrt(omega0 * power_watt) * slab.chi_e /
                     (2.0 * kPi * kSpeedOfLight);
  if (thin_slab_form) {
    out.g = amp * phase; // sin(phase) ~ phase
    if (phase > 0.5)
      out.warning = "thin-slab form requested but omega_0*ell/c = " +
                    std::to_string(phase) + " > 0.5; use the full form";
  } else {
    out.g = amp * std::sin(phase);
  }
  return out;
}

double squeezing_db_from_r(double r) {
  // dB = 10 log10(e^{2r}) = 20 r / ln 10
  return 20.0 * r / std::log(10.0);
}

double squeezing_r_from_db(double db) { return db * std::log(10.0) / 20.0; }

} // namespace ominc
