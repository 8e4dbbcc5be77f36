#pragma once

#include <functional>
#include <vector>

namespace ominc {

// Controls for the adaptive Gauss-Kronrod (G7/K15) integrator used by the
// threshold integrals.  resonance_window is in units of gamma: the initial
// panel set always contains [omega_m - W gamma, omega_m + W gamma] split at
// omega_m, so the narrow resonance line cannot be stepped over.
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 0.0; // absolute floor; 0 means purely relative
  int max_subdivisions = 2000;
  double resonance_window = 50.0; // half-width in units of gamma
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0; // estimated absolute error
  long evaluations = 0;
  int subdivisions = 0; // panels in the final subdivision (counts toward
                        // max_subdivisions, initial break panels included)
};

// Adaptive integration of f over [a, b] starting from the panels delimited by
// `breaks` (which must begin with a and end with b, strictly increasing).
// Worst panel is bisected until the summed error estimate meets
// max(abs_tol, rel_tol * |integral|).  Throws QuadratureError (carrying the
// partial result) if max_subdivisions is exhausted first.  Endpoints are never
// evaluated (all Kronrod nodes are interior).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, std::vector<double> breaks,
                              const QuadratureSpec& spec);

// Half-line integral int_0^inf f(nu) dnu via the compactification
// nu = scale * t / (1 - t), t in [0, 1).  `nu_breaks` (positive, increasing)
// are mapped into t-space and merged with {0, 1}.  f must decay fast enough
// that f(nu(t)) dnu/dt -> 0 as t -> 1 (the threshold integrand falls off as
// 1/nu^4, giving (1-t)^2).
QuadResult integrate_half_line(const std::function<double(double)>& f,
                               double scale, const std::vector<double>& nu_breaks,
                               const QuadratureSpec& spec);

} // namespace ominc
