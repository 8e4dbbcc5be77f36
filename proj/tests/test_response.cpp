#include <cmath>
#include <complex>

#include "doctest.h"
#include "fixtures.hpp"
#include "ominc/constants.hpp"
#include "ominc/errors.hpp"
#include "ominc/response.hpp"

using namespace ominc;
using cplx = std::complex<double>;

namespace {
bool close(cplx a, cplx b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}
} // namespace

TEST_CASE("mechanical susceptibility") {
  const MechanicalOscillator unit{1.0, 1.0, 0.01};
  // chi_m(2) = 1 / (1 - 4 + 0.02 i)
  CHECK(close(mechanical_susceptibility(unit, 2.0), 1.0 / cplx(-3.0, 0.02)));
  // conjugate symmetry (real time series)
  CHECK(close(mechanical_susceptibility(unit, -2.0),
              std::conj(mechanical_susceptibility(unit, 2.0))));
  // purely imaginary on resonance: 1/(i m gamma omega)
  const cplx on_res = mechanical_susceptibility(unit, 1.0);
  CHECK(std::abs(on_res.real()) < 1e-15);
  CHECK(on_res.imag() == doctest::Approx(-1.0 / 0.01).epsilon(1e-12));
  // static response 1/(m omega^2)
  CHECK(close(mechanical_susceptibility(unit, 0.0), cplx(1.0, 0.0)));
}

TEST_CASE("cavity susceptibility") {
  // chi_c = 1/(i nu - kappa/2); kappa=2, nu=1 -> 1/(i - 1) = (-1 - i)/2
  CHECK(close(cavity_susceptibility(2.0, 1.0), cplx(-0.5, -0.5)));
  CHECK(close(cavity_susceptibility(2.0, -1.0),
              std::conj(cavity_susceptibility(2.0, 1.0))));
}

TEST_CASE("slab transfer functions") {
  const SensorConfig cfg = fx::slab_config(fx::membrane(), 2.0);
  const double g = std::get<SlabReadout>(cfg.readout).g;
  const double nu = 1.7 * cfg.oscillator.omega_m;
  const cplx chi = mechanical_susceptibility(cfg.oscillator, nu);
  const TransferTriple t = transfer_functions(cfg, nu);
  CHECK(close(t.yy, cplx(1.0, 0.0)));
  CHECK(close(t.yx, -2.0 * g * g * chi));
  CHECK(close(t.yf, std::sqrt(2.0) * g * chi));
}

TEST_CASE("cavity transfer functions") {
  const SensorConfig cfg = fx::cavity_config(fx::membrane(), 1.0, 10.0);
  const auto& cav = std::get<CavityReadout>(cfg.readout);
  for (double x : {0.03, 0.3, 1.0, 3.0, 33.0}) {
    const double nu = x * cfg.oscillator.omega_m;
    const cplx chic = cavity_susceptibility(cav.kappa, nu);
    const cplx chim = mechanical_susceptibility(cfg.oscillator, nu);
    const TransferTriple t = transfer_functions(cfg, nu);
    CHECK(close(t.yy, 1.0 + cav.kappa * chic));
    // |1 + kappa chi_c| = 1 exactly (all-pass cavity rotation)
    CHECK(std::abs(t.yy) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(close(t.yx, -2.0 * cav.kappa * cav.g_c * cav.g_c * chic * chic * chim));
    CHECK(close(t.yf, std::sqrt(2.0 * cav.kappa) * cav.g_c * chic * chim));
  }
}

TEST_CASE("bad-cavity limit reduces to the slab") {
  // kappa = 1e4 omega_m, identical slab-equivalent g: transfer ratios agree
  // with the slab to O(nu/kappa).
  const SensorConfig slab = fx::slab_config(fx::membrane(), 1.0);
  const SensorConfig cav = fx::cavity_config(fx::membrane(), 1.0, 1e4);
  for (double x : {0.1, 1.0, 10.0}) {
    const double nu = x * slab.oscillator.omega_m;
    const TransferTriple ts = transfer_functions(slab, nu);
    const TransferTriple tc = transfer_functions(cav, nu);
    // the overall cavity phase cancels in |.|; compare moduli
    CHECK(std::abs(tc.yx) ==
          doctest::Approx(std::abs(ts.yx)).epsilon(3.0 * x / 1e4 + 1e-9));
    CHECK(std::abs(tc.yf) ==
          doctest::Approx(std::abs(ts.yf)).epsilon(3.0 * x / 1e4 + 1e-9));
  }
}

TEST_CASE("optimal angle: degenerate and singular cases") {
  // |yx| = |yy|, Re(yx yy*) = 0: every angle is equivalent, returns 0
  TransferTriple degenerate{cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(1.0, 0.0)};
  CHECK(optimal_angle(degenerate) == 0.0);

  SensorConfig cfg = fx::slab_config(fx::membrane(), 1.0);
  std::get<SlabReadout>(cfg.readout).g = 0.0;
  CHECK_THROWS_AS(optimal_angle(cfg, cfg.oscillator.omega_m), SingularError);
}

TEST_CASE("optimal angle lies in (-pi, pi]") {
  const SensorConfig cfg = fx::slab_config(fx::membrane(), 3.0);
  for (double x : {0.01, 0.5, 0.999, 1.0, 1.001, 2.0, 100.0}) {
    const double th = optimal_angle(cfg, x * cfg.oscillator.omega_m);
    CHECK(th > -kPi - 1e-12);
    CHECK(th <= kPi + 1e-12);
  }
}
