#pragma once

#include <string>
#include <vector>

#include "ominc/core.hpp"
#include "ominc/quadrature.hpp"

namespace ominc {

// One scaling-law check.  status is PASS, FAIL or SKIP; `measured` and
// `expected` are the dimensionless quantities being compared, `deviation`
// their relative difference, `tolerance` the documented bound.
struct LawCheck {
  std::string name;
  std::string status;
  double measured = 0.0;
  double expected = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct VerifyReport {
  std::vector<LawCheck> checks;
  bool all_ok() const; // no FAIL (SKIP is fine)
};

// Runs the analytic scaling laws against the numerical optimizer at the
// scenario's (m, omega_m, Q, eta):
//   sql_saturation   optimized coherent ratio in [0.99, 1.05]
//   knee_ratio       delta_p(g_*)/SQL = 2^{1/4} within 1%
//   fd_squeezing     delta_p(r)/delta_p(0) = e^{-r} within 2% for
//                    r in {0.25, 0.5, 1.0}; SKIPped with a low-Q note when
//                    e^{2r} is not << Q
//   squeezing_floor  min_r delta_p = SQL/sqrt(Q) within 15%, plateau onset
//                    within a factor 2 of r_max = ln(Q)/2
//   lossy_coherent   eta^{-1/4} within 5%          (scenario eta < 1)
//   small_eta        eta^{-1/4} e^{-r/2} within 10% at r = 1   (eta <= 0.1)
//   near_lossless    [1+(1-eta)e^{2r}]^{1/4} e^{-r} within 5% at r = 1
//                    (1 - eta <= 0.3; first order in 1-eta, so the deviation
//                    grows toward the 0.3 edge)
// Loss laws report SKIP when the scenario has eta = 1.
VerifyReport verify_scaling_laws(const SensorConfig& config,
                                 const QuadratureSpec& spec = {});

} // namespace ominc
