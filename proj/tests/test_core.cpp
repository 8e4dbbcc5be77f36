#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "ominc/constants.hpp"
#include "ominc/core.hpp"
#include "ominc/errors.hpp"

using namespace ominc;

TEST_CASE("oscillator validation") {
  MechanicalOscillator osc = fx::membrane();
  CHECK_NOTHROW(validate(osc));
  CHECK(osc.quality_factor() == doctest::Approx(1e4));

  osc.mass = 0.0;
  CHECK_THROWS_WITH_AS(validate(osc), "[system].mass: must be positive",
                       ConfigError);
  osc = fx::membrane();
  osc.omega_m = -1.0;
  CHECK_THROWS_AS(validate(osc), ConfigError);
  osc = fx::membrane();
  osc.gamma = -1e-3;
  CHECK_THROWS_AS(validate(osc), ConfigError);
  osc.gamma = 0.0; // undamped limit is legal for PSD work
  CHECK_NOTHROW(validate(osc));
}

TEST_CASE("config validation") {
  SensorConfig cfg = fx::slab_config(fx::membrane());
  CHECK_NOTHROW(validate(cfg));

  SensorConfig bad = cfg;
  std::get<SlabReadout>(bad.readout).g = -1.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = fx::cavity_config(fx::membrane());
  std::get<CavityReadout>(bad.readout).kappa = 0.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = cfg;
  bad.squeezing = FixedAngle{-0.5, 0.0};
  CHECK_THROWS_AS(validate(bad), ConfigError);

  bad = cfg;
  bad.detection.eta = 0.0;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.detection.eta = 1.2;
  CHECK_THROWS_AS(validate(bad), ConfigError);
  bad.detection.eta = 1.0;
  CHECK_NOTHROW(validate(bad));
}

TEST_CASE("squeezing policy accessor") {
  CHECK(squeezing_r(NoSqueezing{}) == 0.0);
  CHECK(squeezing_r(FixedAngle{0.7, 1.0}) == 0.7);
  CHECK(squeezing_r(OptimalAngle{1.3}) == 1.3);
}

TEST_CASE("slab-equivalent coupling and the bad-cavity map") {
  CHECK(slab_equivalent_g(Readout{SlabReadout{2.5e-6, {}}}) ==
        doctest::Approx(2.5e-6));
  // g^2 = 4 g_c^2 / kappa
  CHECK(slab_equivalent_g(Readout{CavityReadout{2.0, 3.0}}) ==
        doctest::Approx(std::sqrt(18.0)));

  SensorConfig cav = fx::cavity_config(fx::membrane());
  const double kappa0 = std::get<CavityReadout>(cav.readout).kappa;
  SensorConfig moved = with_slab_equivalent_g(cav, 5e-6);
  CHECK(std::get<CavityReadout>(moved.readout).kappa == kappa0);
  CHECK(slab_equivalent_g(moved.readout) == doctest::Approx(5e-6).epsilon(1e-14));

  SensorConfig slab = fx::slab_config(fx::membrane());
  CHECK(slab_equivalent_g(with_slab_equivalent_g(slab, 7e-7).readout) ==
        doctest::Approx(7e-7).epsilon(1e-15));
}

TEST_CASE("SQL threshold") {
  const MechanicalOscillator osc = fx::membrane();
  CHECK(sql_threshold(osc) ==
        doctest::Approx(std::sqrt(osc.mass * osc.omega_m)).epsilon(1e-15));
  // sqrt(hbar m omega_m) for the default mode
  CHECK(sql_threshold_si(osc) == doctest::Approx(8.14007e-24).epsilon(1e-5));
  CHECK(sql_threshold_si(osc) ==
        doctest::Approx(std::sqrt(kHbar) * sql_threshold(osc)).epsilon(1e-15));
}

TEST_CASE("g_star") {
  const MechanicalOscillator osc = fx::membrane();
  CHECK(g_star(osc) ==
        doctest::Approx(std::sqrt(osc.mass * osc.gamma * osc.omega_m / 2.0))
            .epsilon(1e-15));
  CHECK(g_star(osc) == doctest::Approx(4.44288e-6).epsilon(1e-5));

  MechanicalOscillator undamped = osc;
  undamped.gamma = 0.0;
  CHECK_THROWS_AS(g_star(undamped), SingularError);
}

TEST_CASE("squeezing dB conversions") {
  // dB = 10 log10 e^{2r}
  CHECK(squeezing_db_from_r(1.0) == doctest::Approx(8.685890).epsilon(1e-6));
  CHECK(squeezing_r_from_db(10.0) == doctest::Approx(1.151293).epsilon(1e-6));
  CHECK(squeezing_r_from_db(squeezing_db_from_r(0.37)) ==
        doctest::Approx(0.37).epsilon(1e-14));
  CHECK(squeezing_db_from_r(0.0) == 0.0);
}

TEST_CASE("coupling from drive power") {
  const SlabProvenance slab{3.5, 25e-9, 1500e-9};
  const MechanicalOscillator osc = fx::membrane();

  // omega_0 ell / c = 2 pi ell / lambda
  const double phase = 2.0 * kPi * 25e-9 / 1500e-9;
  CHECK(phase == doctest::Approx(0.1047198).epsilon(1e-6));

  const CouplingResult full = coupling_from_power(4.4e-7, slab);
  CHECK(!full.warning);
  // Order-of-magnitude anchor: a few 1e-7 W of drive lands near g_*.
  CHECK(full.g / g_star(osc) > 0.8);
  CHECK(full.g / g_star(osc) < 1.25);

  const CouplingResult thin = coupling_from_power(4.4e-7, slab, true);
  CHECK(!thin.warning);
  CHECK(thin.g / full.g == doctest::Approx(phase / std::sin(phase)).epsilon(1e-12));

  // Thick slab: thin-slab form carries a warning, full form does not.
  const SlabProvenance thick{3.5, 150e-9, 1500e-9};
  CHECK(coupling_from_power(1e-6, thick, true).warning.has_value());
  CHECK(!coupling_from_power(1e-6, thick, false).warning.has_value());

  CHECK(coupling_from_power(0.0, slab).g == 0.0);
  CHECK_THROWS_AS(coupling_from_power(-1.0, slab), ConfigError);
  CHECK_THROWS_AS(coupling_from_power(1e-6, SlabProvenance{0.0, 1e-9, 1e-6}),
                  ConfigError);
}

TEST_CASE("coupling scales as sqrt(power)") {
  const SlabProvenance slab{3.5, 25e-9, 1500e-9};
  const double g1 = coupling_from_power(1e-7, slab).g;
  const double g4 = coupling_from_power(4e-7, slab).g;
  CHECK(g4 == doctest::Approx(2.0 * g1).epsilon(1e-12));
}
