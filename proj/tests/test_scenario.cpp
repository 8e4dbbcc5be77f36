#include <cmath>

#include "doctest.h"
#include "ominc/constants.hpp"
#include "ominc/core.hpp"
#include "ominc/errors.hpp"
#include "ominc/scenario.hpp"

using namespace ominc;

TEST_CASE("built-in defaults") {
  const Scenario sc = table1_scenario();
  CHECK(sc.config.oscillator.mass == doctest::Approx(1e-18));
  CHECK(sc.config.oscillator.omega_m == doctest::Approx(2.0 * kPi * 1e5));
  CHECK(sc.config.oscillator.quality_factor() == doctest::Approx(1e4));
  const auto& slab = std::get<SlabReadout>(sc.config.readout);
  CHECK(slab.g == doctest::Approx(g_star(sc.config.oscillator)));
  REQUIRE(slab.provenance.has_value());
  CHECK(slab.provenance->chi_e == doctest::Approx(3.5));
  CHECK(slab.provenance->ell == doctest::Approx(25e-9));
  CHECK(slab.provenance->wavelength == doctest::Approx(1500e-9));
  CHECK(std::holds_alternative<NoSqueezing>(sc.config.squeezing));
  CHECK(sc.config.detection.eta == 1.0);
  CHECK(sc.sweep.variable == "nu");
  CHECK(sc.sweep.points == 300);
  CHECK_NOTHROW(validate(sc.config));
}

TEST_CASE("empty text gives the defaults") {
  CHECK(serialize_scenario(parse_scenario("")) ==
        serialize_scenario(table1_scenario()));
  CHECK(serialize_scenario(parse_scenario("# only a comment\n\n")) ==
        serialize_scenario(table1_scenario()));
}

TEST_CASE("round-trip is idempotent") {
  const std::string canon = serialize_scenario(table1_scenario());
  CHECK(serialize_scenario(parse_scenario(canon)) == canon);

  const std::string text = R"(
[system]
kind = cavity
mass = 2.5 pg
omega_m = 1.2 MHz
q_factor = 5e3
kappa = 80 MHz
[drive]
g_c = 3.1e-3 rad/s
[squeezing]
mode = fixed
r = 0.93
theta = -90 deg
[detection]
eta = 0.82
[sweep]
variable = r
scale = linear
from = 0
to = 3
points = 12
)";
  const std::string canon2 = serialize_scenario(parse_scenario(text));
  CHECK(serialize_scenario(parse_scenario(canon2)) == canon2);
}

TEST_CASE("units are applied") {
  const Scenario sc = parse_scenario(R"(
[system]
mass = 1 pg
omega_m = 250 kHz
q_factor = 2e4
[squeezing]
mode = optimal
r = 10 dB
)");
  CHECK(sc.config.oscillator.mass == doctest::Approx(1e-15));
  CHECK(sc.config.oscillator.omega_m == doctest::Approx(2.0 * kPi * 2.5e5));
  CHECK(sc.config.oscillator.gamma ==
        doctest::Approx(2.0 * kPi * 2.5e5 / 2e4));
  CHECK(std::get<OptimalAngle>(sc.config.squeezing).r ==
        doctest::Approx(1.151293).epsilon(1e-6));
  // the dB conversion is surfaced as a note
  REQUIRE(sc.notes.size() == 1);
  CHECK(sc.notes[0].find("dB") != std::string::npos);
}

TEST_CASE("theta in degrees") {
  const Scenario sc = parse_scenario(R"(
[squeezing]
mode = fixed
r = 1
theta = -90 deg
)");
  CHECK(std::get<FixedAngle>(sc.config.squeezing).theta ==
        doctest::Approx(-0.5 * kPi).epsilon(1e-12));
  CHECK(sc.notes.empty());
}

TEST_CASE("coupling units") {
  const Scenario a = parse_scenario("[drive]\ng = 2 gstar\n");
  CHECK(std::get<SlabReadout>(a.config.readout).g ==
        doctest::Approx(2.0 * g_star(a.config.oscillator)).epsilon(1e-12));
  const Scenario b = parse_scenario("[drive]\ng = 3.3e-6 sqrt_kg_per_s\n");
  CHECK(std::get<SlabReadout>(b.config.readout).g == doctest::Approx(3.3e-6));
}

TEST_CASE("drive from power") {
  const Scenario sc = parse_scenario("[drive]\npower = 4.4e-7 W\n");
  const auto& slab = std::get<SlabReadout>(sc.config.readout);
  const double gg = slab.g / g_star(sc.config.oscillator);
  CHECK(gg > 0.8);
  CHECK(gg < 1.25);
}

TEST_CASE("sweep parsing") {
  const Scenario sc = parse_scenario(R"(
[drive]
g = 1 gstar
[sweep]
variable = g
scale = log
from = 0.1 gstar
to = 100 gstar
points = 41
)");
  CHECK(sc.sweep.variable == "g");
  CHECK(sc.sweep.log_scale);
  CHECK(sc.sweep.points == 41);
  CHECK(sc.sweep.from ==
        doctest::Approx(0.1 * g_star(sc.config.oscillator)).epsilon(1e-12));
  CHECK(sc.sweep.to ==
        doctest::Approx(100.0 * g_star(sc.config.oscillator)).epsilon(1e-12));
}

TEST_CASE("config errors carry field paths") {
  const auto field_of = [](const std::string& text) {
    try {
      parse_scenario(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("NO ERROR");
  };

  CHECK(field_of("[system]\ngamma = 1 Hz\nq_factor = 10\n") ==
        "[system].gamma");
  CHECK(field_of("[drive]\ng = 1 gstar\npower = 1 uW\n") == "[drive]");
  CHECK(field_of("[squeezing]\nmode = none\nr = 1\n") == "[squeezing].r");
  CHECK(field_of("[squeezing]\nmode = optimal\nr = 1\ntheta = 0 rad\n") ==
        "[squeezing].theta");
  CHECK(field_of("[squeezing]\nmode = fixed\nr = 1\n") == "[squeezing].theta");
  CHECK(field_of("[system]\nkind = cavity\n") == "[system].kappa");
  CHECK(field_of("[system]\nbogus = 3\n") == "[system].bogus");
  CHECK(field_of("[detection]\neta = 1.5\n") == "[detection].eta");
  CHECK(field_of("[sweep]\nvariable = r\n") == "[sweep].from");
  CHECK(field_of("[sweep]\nvariable = r\nfrom = 2\nto = 1\npoints = 5\n") ==
        "[sweep].from");
  CHECK(field_of("[system]\nmass = 1\n") == "[system].mass"); // missing unit
  CHECK(field_of("[system]\nmass = 1 stone\n") == "[system].mass");
  CHECK(field_of("key_without_section = 1\n") == "key_without_section");
}

TEST_CASE("exactly one coupling source") {
  CHECK_THROWS_AS(
      parse_scenario("[system]\nkind = cavity\nkappa = 10 MHz\n"
                     "[drive]\ng = 1 gstar\ng_c = 1 rad/s\n"),
      ConfigError);
  // g_c on a slab is rejected
  CHECK_THROWS_AS(parse_scenario("[drive]\ng_c = 1 rad/s\n"), ConfigError);
  // power on a cavity is rejected
  CHECK_THROWS_AS(parse_scenario("[system]\nkind = cavity\nkappa = 1 MHz\n"
                                 "[drive]\npower = 1 uW\n"),
                  ConfigError);
}
