#pragma once

#include <optional>
#include <string>
#include <variant>

namespace ominc {

// Damped mechanical mode: chi_m(nu) = 1 / [m (omega_m^2 - nu^2 + i gamma nu)].
struct MechanicalOscillator {
  double mass = 0.0;    // kg
  double omega_m = 0.0; // rad/s
  double gamma = 0.0;   // rad/s, energy damping rate (gamma = omega_m / Q)

  double quality_factor() const { return omega_m / gamma; }
};

// Throws ConfigError if mass or omega_m are nonpositive or gamma is negative.
// gamma = 0 is allowed (undamped limit is legal for PSD evaluation; threshold
// integrals and g_star refuse it separately).
void validate(const MechanicalOscillator& osc);

// Free-space dielectric slab probed in transmission: Y_out = Y_in + sqrt(2) g x,
// with x in zero-point units.  g carries sqrt(kg)*rad/s in the natural-unit
// convention (hbar = c = 1 with SI kg and rad/s).
struct SlabProvenance {
  double chi_e = 0.0;      // electric susceptibility of the slab material
  double ell = 0.0;        // slab thickness, m
  double wavelength = 0.0; // drive wavelength, m
};

struct SlabReadout {
  double g = 0.0; // sqrt(kg)*rad/s
  std::optional<SlabProvenance> provenance; // set when g came from a power
};

// Single-sided Fabry-Perot cavity on resonance (zero detuning):
// chi_c(nu) = 1/(i nu - kappa/2), drive-enhanced coupling g_c.
struct CavityReadout {
  double kappa = 0.0; // rad/s, line width
  double g_c = 0.0;   // drive-enhanced optomechanical coupling
};

using Readout = std::variant<SlabReadout, CavityReadout>;

// Input squeezing of the readout field.  Conventions:
//   S_XX = (cosh 2r - cos(theta) sinh 2r)/2
//   S_YY = (cosh 2r + cos(theta) sinh 2r)/2
//   S_XY = -(sin(theta) sinh 2r)/2
// theta = -pi/2 is the phase-quadrature-squeezed choice for a slab readout.
struct NoSqueezing {};
struct FixedAngle {
  double r = 0.0;     // squeezing strength
  double theta = 0.0; // rad
};
struct OptimalAngle {
  double r = 0.0; // angle follows theta*(nu) at every frequency
};
using SqueezingPolicy = std::variant<NoSqueezing, FixedAngle, OptimalAngle>;

double squeezing_r(const SqueezingPolicy& policy);

struct DetectionChain {
  double eta = 1.0; // photodetection efficiency, (0, 1]
};

struct SensorConfig {
  MechanicalOscillator oscillator;
  Readout readout;
  SqueezingPolicy squeezing = NoSqueezing{};
  DetectionChain detection;
};

// Throws ConfigError on out-of-range parameters (eta outside (0,1], negative
// r, nonpositive kappa, negative couplings, ...).
void validate(const SensorConfig& config);

// Slab coupling that reproduces the cavity response in the bad-cavity limit:
// g^2 = 4 g_c^2 / kappa.  For a slab readout returns g itself.
double slab_equivalent_g(const Readout& readout);

// Copy of `config` with its readout coupling replaced so that the
// slab-equivalent coupling equals g (cavity readouts keep kappa and rescale
// g_c to hold 4 g_c^2 / kappa = g^2).
SensorConfig with_slab_equivalent_g(const SensorConfig& config, double g);

// Standard quantum limit for an impulse delivered within 1/omega_m:
//   delta_p_SQL = sqrt(m omega_m)        (natural units)
//   delta_p_SQL = sqrt(hbar m omega_m)   (kg m/s)
double sql_threshold(const MechanicalOscillator& osc);
double sql_threshold_si(const MechanicalOscillator& osc);

// Coupling that minimizes the coherent-readout PSD on resonance:
// g_*(omega_m) = sqrt(m gamma omega_m / 2).  Throws SingularError if gamma = 0.
// (With input squeezing the on-resonance optimum moves to e^r g_*.)
double g_star(const MechanicalOscillator& osc);

// Slab coupling from circulating drive power (c restored, no hbar needed):
//   full form:    g = sqrt(omega_0 P) chi_e sin(omega_0 ell / c) / (2 pi c)
//   thin slab:    g = sqrt(omega_0 P) chi_e ell omega_0 / (2 pi c^2)
// with omega_0 = 2 pi c / lambda.  The thin-slab form loses accuracy once
// omega_0 ell / c > 0.5; in that case the result carries a warning.
struct CouplingResult {
  double g = 0.0; // sqrt(kg)*rad/s
  std::optional<std::string> warning;
};

CouplingResult coupling_from_power(double power_watt, const SlabProvenance& slab,
                                   bool thin_slab_form = false);

// Squeezing level conversions: dB = 10 log10(e^{2r}).
double squeezing_db_from_r(double r);
double squeezing_r_from_db(double db);

} // namespace ominc
