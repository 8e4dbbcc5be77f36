#pragma once

#include <string>
#include <vector>

#include "ominc/core.hpp"

namespace ominc {

// Sweep request, normalized: `from`/`to` are in internal units for the chosen
// variable (rad/s for nu; slab-equivalent sqrt(kg)*rad/s for g; W for power;
// bare numbers for r and eta).
struct SweepSpec {
  std::string variable = "nu"; // nu | g | power | r | eta
  bool log_scale = true;
  double from = 0.0;
  double to = 0.0;
  int points = 300;
};

struct Scenario {
  SensorConfig config;
  SweepSpec sweep;
  // Informational notes produced while parsing (currently: the dB -> r
  // conversion, so a dB input is never applied silently).  Not serialized.
  std::vector<std::string> notes;
};

// Table-style default scenario: 1 fg SiN-like membrane, omega_m/2pi = 100 kHz,
// Q = 1e4, chi_e = 3.5, lambda = 1500 nm, ell = 25 nm, slab readout at
// g = g_*, coherent light, unit efficiency; nu sweep over [1 kHz, 10 MHz].
Scenario table1_scenario();

// Parse an INI-style scenario on top of the table-1 defaults.  Sections
// [system], [drive], [squeezing], [detection], [sweep]; '#' and ';' start
// comments.  Dimensioned keys REQUIRE a unit suffix:
//   frequencies  Hz kHz MHz GHz (ordinary frequency, stored as 2 pi f) | rad/s
//   mass         ag fg pg ng ug mg g kg
//   lengths      pm nm um mm m
//   power        fW pW nW uW mW W
//   coupling g   gstar (units of g_*(omega_m)) | sqrt_kg_per_s (absolute)
//   angle        rad | deg
//   squeezing r  bare (r itself) | dB (10 log10 e^{2r})
// Exactly one of [system].gamma / [system].q_factor and exactly one of
// [drive].g / [drive].power (slab) or [drive].g / [drive].g_c (cavity) may be
// given.  Unknown keys are errors.  Throws ConfigError with the field path.
Scenario parse_scenario(const std::string& text);

// Canonical form: absolute internal units only (rad/s, kg, m, W,
// sqrt_kg_per_s), %.17g floats, fixed key order — so parse(serialize(s))
// reproduces s bit for bit and serialize(parse(.)) is idempotent.
std::string serialize_scenario(const Scenario& scenario);

} // namespace ominc
