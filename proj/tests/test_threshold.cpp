#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "ominc/constants.hpp"
#include "ominc/errors.hpp"
#include "ominc/threshold.hpp"

using namespace ominc;

namespace {

// Residue closed form of the coherent threshold integral: with x = nu/omega_m,
// a = 2 g^2/(m omega_m^2) and 1/Q^2 the damping term,
//   I = int_0^inf dx / [(x^2-1)^2 + x^2/Q^2 + a^2]
//     = pi / (2 rc sqrt(2 rc - 2 + 1/Q^2)),   rc = sqrt(1 + a^2).
double coherent_ratio_closed_form(const MechanicalOscillator& osc, double g) {
  const double q = osc.quality_factor();
  const double a = 2.0 * g * g / (osc.mass * osc.omega_m * osc.omega_m);
  const double rc = std::sqrt(1.0 + a * a);
  const double ix = kPi / (2.0 * rc * std::sqrt(2.0 * rc - 2.0 + 1.0 / (q * q)));
  const double inv_dp2 =
      4.0 * g * g / (kPi * osc.mass * osc.mass * std::pow(osc.omega_m, 3)) * ix;
  return 1.0 / std::sqrt(inv_dp2) / sql_threshold(osc);
}

bool has_flag(const std::vector<std::string>& flags, const std::string& f) {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

} // namespace

TEST_CASE("threshold equals the residue closed form") {
  MechanicalOscillator osc = fx::membrane();
  osc.gamma = osc.omega_m / 10.0; // Q = 10: broad line, quick integral
  for (double gg : {0.5, 1.0, 3.0}) {
    const SensorConfig cfg = fx::slab_config(osc, gg);
    const ThresholdResult res = momentum_threshold(cfg);
    const double g = std::get<SlabReadout>(cfg.readout).g;
    CHECK(res.ratio_to_sql ==
          doctest::Approx(coherent_ratio_closed_form(osc, g)).epsilon(1e-8));
  }
}

TEST_CASE("threshold bookkeeping") {
  const SensorConfig cfg = fx::slab_config(fx::membrane_q100(), 1.0);
  const ThresholdResult res = momentum_threshold(cfg);
  CHECK(res.delta_p ==
        doctest::Approx(1.0 / std::sqrt(res.integral_value)).epsilon(1e-14));
  CHECK(res.ratio_to_sql ==
        doctest::Approx(res.delta_p / sql_threshold(cfg.oscillator))
            .epsilon(1e-14));
  CHECK(res.evaluations > 0);
  CHECK(res.error_estimate >= 0.0);
  CHECK(res.error_estimate <= 1e-6 * res.integral_value);
}

TEST_CASE("knee factor at g_star") {
  const SensorConfig cfg = fx::slab_config(fx::membrane(), 1.0);
  const ThresholdResult res = momentum_threshold(cfg);
  CHECK(res.ratio_to_sql ==
        doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-6));
}

TEST_CASE("singular inputs are refused") {
  SensorConfig cfg = fx::slab_config(fx::membrane(), 1.0);
  cfg.oscillator.gamma = 0.0;
  CHECK_THROWS_AS(momentum_threshold(cfg), SingularError);

  SensorConfig zero = fx::slab_config(fx::membrane(), 1.0);
  std::get<SlabReadout>(zero.readout).g = 0.0;
  CHECK_THROWS_AS(momentum_threshold(zero), SingularError);
}

TEST_CASE("snr_optimal") {
  const SensorConfig cfg = fx::slab_config(fx::membrane_q100(), 1.0);
  const ThresholdResult res = momentum_threshold(cfg);
  CHECK(snr_optimal(cfg, res.delta_p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(snr_optimal(cfg, 3.0 * res.delta_p) ==
        doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("coupling optimization reaches the SQL plateau") {
  // Q = 1e4: the coherent optimum is a wide flat plateau just above the SQL.
  const SensorConfig cfg = fx::slab_config(fx::membrane(), 1.0);
  const OptimizeResult o = optimize_coupling(cfg);
  CHECK(o.at_opt.ratio_to_sql > 0.99);
  CHECK(o.at_opt.ratio_to_sql < 1.05);
  // plateau-left edge never exceeds the raw argmin, and stays within the
  // documented 0.5% cap of the best value found
  CHECK(o.g_opt <= o.g_best * (1.0 + 1e-12));
  CHECK(o.delta_p_best <= o.at_opt.delta_p * (1.0 + 1e-12));
  CHECK(o.at_opt.delta_p <= o.delta_p_best * 1.0051);
  CHECK(has_flag(o.regime_flags, "sql_plateau"));
  CHECK(o.threshold_evaluations > 0);
}

TEST_CASE("optimized squeezing follows e^{-r}") {
  SensorConfig cfg = fx::slab_config(fx::membrane(), 1.0); // Q = 1e4
  cfg.squeezing = OptimalAngle{1.0};
  const OptimizeResult o = optimize_coupling(cfg);
  CHECK(o.at_opt.ratio_to_sql ==
        doctest::Approx(std::exp(-1.0)).epsilon(0.02));
  CHECK(has_flag(o.regime_flags, "squeezing_limited"));
}

TEST_CASE("regime flags") {
  // e^{2r} >= Q: the squeezing floor has been hit
  MechanicalOscillator osc = fx::membrane();
  osc.gamma = osc.omega_m / 10.0; // Q = 10
  SensorConfig low_q = fx::slab_config(osc, 1.0);
  low_q.squeezing = OptimalAngle{2.0}; // e^4 = 54.6 > 10
  CHECK(has_flag(momentum_threshold(low_q).regime_flags, "low_q"));

  SensorConfig lossy = fx::slab_config(fx::membrane_q100(), 1.0);
  lossy.squeezing = OptimalAngle{2.0};
  lossy.detection.eta = 0.5; // (1-eta) e^{2r}/eta = 54.6 >= 1
  CHECK(has_flag(momentum_threshold(lossy).regime_flags, "loss_limited"));

  const SensorConfig clean = fx::slab_config(fx::membrane_q100(), 1.0);
  CHECK(momentum_threshold(clean).regime_flags.empty());
}

TEST_CASE("optimizer input validation") {
  const SensorConfig cfg = fx::slab_config(fx::membrane_q100(), 1.0);
  CHECK_THROWS_AS(optimize_coupling(cfg, -1.0, 1.0, {}), ConfigError);
  CHECK_THROWS_AS(optimize_coupling(cfg, 1.0, 0.5, {}), ConfigError);
}

TEST_CASE("scaling report selects and meets the laws") {
  const SensorConfig base = fx::slab_config(fx::membrane(), 1.0); // Q = 1e4
  const auto rows = scaling_report(base, {0.0, 1.0}, {1.0, 0.5});
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    if (row.r == 0.0 && row.eta == 1.0) {
      CHECK(row.law == "sql");
      CHECK(row.ratio_to_sql == doctest::Approx(1.0).epsilon(0.05));
    } else if (row.r == 1.0 && row.eta == 1.0) {
      CHECK(row.law == "fd_squeezing");
      CHECK(row.ratio_to_sql ==
            doctest::Approx(std::exp(-1.0)).epsilon(0.02));
    } else if (row.r == 0.0 && row.eta == 0.5) {
      CHECK(row.law == "lossy_coherent");
      CHECK(row.ratio_to_sql ==
            doctest::Approx(std::pow(0.5, -0.25)).epsilon(0.05));
    } else {
      // r = 1, eta = 0.5: between the published regimes
      CHECK(row.law == "intermediate");
      CHECK(std::isnan(row.predicted_ratio));
    }
    if (!std::isnan(row.predicted_ratio))
      CHECK(std::abs(row.deviation) < 0.05);
  }
}
