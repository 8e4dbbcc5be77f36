#include "ominc/threshold.hpp"

#include <algorithm>
#include <cmath>

#include "ominc/constants.hpp"
#include "ominc/errors.hpp"
#include "ominc/spectra.hpp"

namespace ominc {
namespace {

std::vector<std::string> regime_flags_for(const SensorConfig& config) {
  std::vector<std::string> flags;
  const double r = squeezing_r(config.squeezing);
  const double q = config.oscillator.quality_factor();
  const double eta = config.detection.eta;
  if (r > 0.0 && std::exp(2.0 * r) >= q) flags.push_back("low_q");
  if (eta < 1.0 && (1.0 - eta) * std::exp(2.0 * r) / eta >= 1.0)
    flags.push_back("loss_limited");
  return flags;
}

} // namespace

ThresholdResult momentum_threshold(const SensorConfig& config,
                                   const QuadratureSpec& spec) {
  validate(config);
  const auto& osc = config.oscillator;
  if (osc.gamma <= 0.0)
    throw SingularError(
        "momentum threshold undefined for an undamped oscillator (gamma = 0)");
  if (slab_equivalent_g(config.readout) <= 0.0)
    throw SingularError("momentum threshold undefined at zero coupling");

  // Panels always bracket the resonance line and split at omega_m.
  const double w = spec.resonance_window * osc.gamma;
  std::vector<double> breaks;
  if (osc.omega_m - w > 0.0) breaks.push_back(osc.omega_m - w);
  breaks.push_back(osc.omega_m);
  breaks.push_back(osc.omega_m + w);

  const auto inv_psd = [&config](double nu) {
    return 1.0 / (kPi * force_psd_total(config, nu));
  };
  const QuadResult q =
      integrate_half_line(inv_psd, osc.omega_m, breaks, spec);

  ThresholdResult out;
  out.integral_value = q.value; // = int dnu/(2 pi S_FF) over the full line
  out.error_estimate = q.error;
  out.evaluations = q.evaluations;
  out.delta_p = 1.0 / std::sqrt(q.value);
  out.ratio_to_sql = out.delta_p / sql_threshold(osc);
  out.regime_flags = regime_flags_for(config);
  return out;
}

double snr_optimal(const SensorConfig& config, double delta_p_signal,
                   const QuadratureSpec& spec) {
  return delta_p_signal / momentum_threshold(config, spec).delta_p;
}

OptimizeResult optimize_coupling(const SensorConfig& config, double g_lo,
                                 double g_hi, const QuadratureSpec& spec) {
  if (!(g_lo > 0.0) || !(g_hi > g_lo))
    throw ConfigError("optimize_coupling", "need 0 < g_lo < g_hi");

  OptimizeResult out;
  const auto dp_at = [&](double ln_g) {
    ++out.threshold_evaluations;
    return momentum_threshold(with_slab_equivalent_g(config, std::exp(ln_g)),
                              spec)
        .delta_p;
  };

  // Golden-section search on ln g; the objective is unimodal up to a flat
  // plateau.  Stop once the bracket is narrow and the improvement stalls.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::log(g_lo), b = std::log(g_hi);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = dp_at(x1), f2 = dp_at(x2);
  double best = std::min(f1, f2);
  int stalled = 0;
  while (b - a > 1e-4 && stalled < 3) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = dp_at(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = dp_at(x2);
    }
    const double now = std::min(f1, f2);
    stalled = (best - now <= 1e-6 * best) ? stalled + 1 : 0;
    best = std::min(best, now);
  }
  const double ln_best = f1 <= f2 ? x1 : x2;
  out.g_best = std::exp(ln_best);
  out.delta_p_best = best;

  // Plateau rule: walk to the smallest g still within 0.5% of the optimum.
  const double cap = best * 1.005;
  double lo = std::log(g_lo), hi = ln_best;
  if (dp_at(lo) <= cap) {
    hi = lo; // flat all the way to the bracket edge
  } else {
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      (dp_at(mid) <= cap ? hi : lo) = mid;
    }
  }
  out.g_opt = std::exp(hi);
  out.at_opt =
      momentum_threshold(with_slab_equivalent_g(config, out.g_opt), spec);
  ++out.threshold_evaluations;

  out.regime_flags = out.at_opt.regime_flags;
  if (out.g_best / out.g_opt >= 2.0) out.regime_flags.push_back("sql_plateau");
  const double r = squeezing_r(config.squeezing);
  const bool lossy = std::find(out.regime_flags.begin(), out.regime_flags.end(),
                               "loss_limited") != out.regime_flags.end();
  const bool low_q = std::find(out.regime_flags.begin(), out.regime_flags.end(),
                               "low_q") != out.regime_flags.end();
  if (r > 0.0 && !lossy && !low_q)
    out.regime_flags.push_back("squeezing_limited");
  return out;
}

OptimizeResult optimize_coupling(const SensorConfig& config,
                                 const QuadratureSpec& spec) {
  const double gs = g_star(config.oscillator);
  const double q = config.oscillator.quality_factor();
  const double r = squeezing_r(config.squeezing);
  return optimize_coupling(config, 1e-2 * gs,
                           30.0 * std::sqrt(q) * std::exp(r) * gs, spec);
}

std::vector<ScalingRow> scaling_report(const SensorConfig& config,
                                       const std::vector<double>& r_values,
                                       const std::vector<double>& eta_values,
                                       const QuadratureSpec& spec) {
  std::vector<ScalingRow> rows;
  const double q = config.oscillator.quality_factor();
  const double gs = g_star(config.oscillator);
  for (double eta : eta_values) {
    for (double r : r_values) {
      SensorConfig point = config;
      point.squeezing =
          r > 0.0 ? SqueezingPolicy{OptimalAngle{r}} : SqueezingPolicy{NoSqueezing{}};
      point.detection.eta = eta;
      const OptimizeResult opt = optimize_coupling(point, spec);

      ScalingRow row;
      row.r = r;
      row.eta = eta;
      row.g_opt = opt.g_opt / gs;
      row.ratio_to_sql = opt.at_opt.ratio_to_sql;
      row.regime_flags = opt.regime_flags;
      const double nan = std::nan("");
      if (eta >= 1.0 && r == 0.0) {
        row.law = "sql";
        row.predicted_ratio = 1.0;
      } else if (eta >= 1.0) {
        if (std::exp(2.0 * r) < q) {
          row.law = "fd_squeezing";
          row.predicted_ratio = std::exp(-r);
        } else {
          row.law = "squeezing_floor";
          row.predicted_ratio = 1.0 / std::sqrt(q);
        }
      } else if (r == 0.0) {
        row.law = "lossy_coherent";
        row.predicted_ratio = std::pow(eta, -0.25);
      } else if (eta <= 0.1) {
        row.law = "small_eta";
        row.predicted_ratio = std::pow(eta, -0.25) * std::exp(-0.5 * r);
      } else if (1.0 - eta <= 0.3) {
        row.law = "near_lossless";
        row.predicted_ratio =
            std::pow(1.0 + (1.0 - eta) * std::exp(2.0 * r), 0.25) *
            std::exp(-r);
      } else {
        row.law = "intermediate";
        row.predicted_ratio = nan;
      }
      row.deviation = std::isnan(row.predicted_ratio)
                          ? nan
                          : row.ratio_to_sql / row.predicted_ratio - 1.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

} // namespace ominc
