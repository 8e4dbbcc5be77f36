// ominc -- optomechanical impulse noise calculator.
//
// Subcommands:
//   psd            force-equivalent noise spectrum with breakdown columns
//   threshold      momentum threshold, single point or sweep, opt. optimized
//   optimal-angle  frequency-dependent squeezing angle theta*(nu)
//   verify         analytic scaling laws vs the numerical optimizer
//   simulate       time-domain matched-filter Monte Carlo
//
// Exit codes: 0 success, 1 verification (or Monte Carlo verdict) failure,
// 2 config error, 3 numerical failure.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ominc/constants.hpp"
#include "ominc/errors.hpp"
#include "ominc/response.hpp"
#include "ominc/scenario.hpp"
#include "ominc/sim.hpp"
#include "ominc/spectra.hpp"
#include "ominc/threshold.hpp"
#include "ominc/verify.hpp"

using nlohmann::json;
using namespace ominc;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  bool quiet = false;
};

Scenario load_scenario(const CommonOpts& opts) {
  Scenario sc;
  if (opts.config_path.empty()) {
    sc = table1_scenario();
  } else {
    std::ifstream in(opts.config_path);
    if (!in)
      throw ConfigError("--config", "cannot read '" + opts.config_path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    sc = parse_scenario(ss.str());
  }
  // Conversion notes (currently dB -> r) are always surfaced so a unit
  // convention mismatch cannot slip through silently.
  for (const auto& note : sc.notes) std::cerr << "note: " << note << "\n";
  return sc;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_output(const CommonOpts& opts, const std::string& payload) {
  if (opts.out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out)
    throw ConfigError("--out", "cannot write '" + opts.out_path + "'");
  out << payload;
  if (!opts.quiet)
    std::cerr << "wrote " << payload.size() << " bytes to " << opts.out_path
              << "\n";
}

// Rows of named doubles, rendered as CSV (header carries units) or JSON, with
// an optional trailing string column (regime/error flags).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> row_notes;
  std::string note_column;

  std::string render(const std::string& format) const {
    std::ostringstream out;
    if (format == "csv") {
      for (std::size_t c = 0; c < columns.size(); ++c)
        out << (c ? "," : "") << columns[c];
      if (!note_column.empty()) out << "," << note_column;
      out << "\n";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t c = 0; c < rows[i].size(); ++c)
          out << (c ? "," : "") << num(rows[i][c]);
        if (!note_column.empty()) out << "," << row_notes[i];
        out << "\n";
      }
    } else {
      json arr = json::array();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        json obj;
        for (std::size_t c = 0; c < rows[i].size(); ++c)
          obj[columns[c]] = rows[i][c];
        if (!note_column.empty()) obj[note_column] = row_notes[i];
        arr.push_back(obj);
      }
      out << arr.dump(2) << "\n";
    }
    return out.str();
  }
};

std::vector<double> sweep_grid(const SweepSpec& sw) {
  std::vector<double> xs(static_cast<std::size_t>(sw.points));
  if (sw.points == 1) {
    xs[0] = sw.from;
    return xs;
  }
  for (int i = 0; i < sw.points; ++i) {
    const double t = static_cast<double>(i) / (sw.points - 1);
    xs[static_cast<std::size_t>(i)] =
        sw.log_scale ? sw.from * std::pow(sw.to / sw.from, t)
                     : sw.from + (sw.to - sw.from) * t;
  }
  return xs;
}

// Worker-pool map over point indices; rows land in input order because each
// body writes its own slot.  The first exception (if any) is rethrown in the
// caller once the pool has drained.
template <typename F> void parallel_for(int n, F&& body) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min(workers, 8u);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto guarded = [&](int i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) guarded(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
          guarded(i);
      });
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
}

int run_psd(const CommonOpts& opts) {
  const Scenario sc = load_scenario(opts);
  if (sc.sweep.variable != "nu")
    throw ConfigError("[sweep].variable", "psd sweeps nu");
  const auto xs = sweep_grid(sc.sweep);
  Table table;
  table.columns = {"f_Hz",
                   "S_total_N2_per_Hz",
                   "S_shot_N2_per_Hz",
                   "S_backaction_N2_per_Hz",
                   "S_cross_N2_per_Hz",
                   "S_loss_N2_per_Hz",
                   "theta_rad"};
  table.rows.resize(xs.size());
  parallel_for(static_cast<int>(xs.size()), [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    const ForcePsdPoint p = force_psd(sc.config, xs[idx]);
    table.rows[idx] = {xs[idx] / (2.0 * kPi), kHbar * p.total,
                       kHbar * p.shot,        kHbar * p.backaction,
                       kHbar * p.cross,       kHbar * p.loss,
                       p.theta_used};
  });
  write_output(opts, table.render(opts.format));
  return 0;
}

int run_threshold(const CommonOpts& opts, bool optimize) {
  const Scenario sc = load_scenario(opts);
  const std::string var = sc.sweep.variable;
  const double gs = g_star(sc.config.oscillator);

  const bool single = var == "nu"; // nu sweeps don't apply to thresholds
  std::vector<double> xs =
      single ? std::vector<double>{0.0} : sweep_grid(sc.sweep);
  if (!single && var == "r" &&
      std::holds_alternative<NoSqueezing>(sc.config.squeezing))
    throw ConfigError("[squeezing].mode",
                      "r sweep needs mode = fixed or optimal");
  if (optimize && (var == "g" || var == "power"))
    throw ConfigError("--optimize",
                      "coupling sweeps fix g; drop --optimize or sweep r/eta");

  Table table;
  table.columns = {var == "power" ? "power_W"
                   : var == "g"   ? "g_over_gstar"
                   : var == "r"   ? "r"
                   : var == "eta" ? "eta"
                                  : "point",
                   "delta_p_kg_m_per_s",
                   "ratio_to_sql",
                   "g_used_over_gstar",
                   "integral_natural",
                   "error_estimate",
                   "evaluations"};
  table.note_column = "flags";
  table.rows.resize(xs.size());
  table.row_notes.resize(xs.size());

  const SlabProvenance* prov = nullptr;
  if (const auto* slab = std::get_if<SlabReadout>(&sc.config.readout))
    if (slab->provenance) prov = &*slab->provenance;
  if (var == "power" && prov == nullptr)
    throw ConfigError("[system].chi_e",
                      "power sweep needs chi_e, ell and wavelength");

  parallel_for(static_cast<int>(xs.size()), [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    const double x = xs[idx];
    SensorConfig cfg = sc.config;
    if (var == "g") cfg = with_slab_equivalent_g(cfg, x);
    if (var == "power")
      cfg = with_slab_equivalent_g(cfg, coupling_from_power(x, *prov).g);
    if (var == "r") {
      if (auto* fx = std::get_if<FixedAngle>(&cfg.squeezing))
        fx->r = x;
      else
        cfg.squeezing = OptimalAngle{x};
    }
    if (var == "eta") cfg.detection.eta = x;

    const double xcol = var == "g"       ? x / gs
                        : var == "power" ? x
                        : single         ? 0.0
                                         : x;
    const double nan = std::nan("");
    std::vector<std::string> flags;
    ThresholdResult res;
    double g_used = slab_equivalent_g(cfg.readout);
    // Per-point numerical failures become flagged rows, not aborts.
    try {
      if (optimize) {
        const OptimizeResult o = optimize_coupling(cfg);
        res = o.at_opt;
        g_used = o.g_opt;
        flags = o.regime_flags;
      } else {
        res = momentum_threshold(cfg);
        flags = res.regime_flags;
      }
    } catch (const QuadratureError& e) {
      table.rows[idx] = {xcol,
                         nan,
                         nan,
                         g_used / gs,
                         e.partial(),
                         e.error(),
                         static_cast<double>(e.evaluations())};
      table.row_notes[idx] = "quadrature_failed";
      return;
    } catch (const SingularError&) {
      table.rows[idx] = {xcol, nan, nan, g_used / gs, nan, nan, 0.0};
      table.row_notes[idx] = "singular";
      return;
    }
    std::string joined;
    for (const auto& f : flags) joined += (joined.empty() ? "" : ";") + f;
    table.rows[idx] = {xcol,
                       std::sqrt(kHbar) * res.delta_p,
                       res.ratio_to_sql,
                       g_used / gs,
                       res.integral_value,
                       res.error_estimate,
                       static_cast<double>(res.evaluations)};
    table.row_notes[idx] = joined;
  });
  write_output(opts, table.render(opts.format));
  return 0;
}

int run_optimal_angle(const CommonOpts& opts) {
  const Scenario sc = load_scenario(opts);
  if (sc.sweep.variable != "nu")
    throw ConfigError("[sweep].variable", "optimal-angle sweeps nu");
  const auto xs = sweep_grid(sc.sweep);
  Table table;
  table.columns = {"f_Hz", "theta_rad"};
  table.rows.resize(xs.size());
  parallel_for(static_cast<int>(xs.size()), [&](int i) {
    const auto idx = static_cast<std::size_t>(i);
    table.rows[idx] = {xs[idx] / (2.0 * kPi),
                       optimal_angle(sc.config, xs[idx])};
  });
  write_output(opts, table.render(opts.format));
  return 0;
}

int run_verify(const CommonOpts& opts) {
  const Scenario sc = load_scenario(opts);
  const VerifyReport report = verify_scaling_laws(sc.config);
  std::ostringstream out;
  if (opts.format == "json") {
    json arr = json::array();
    for (const auto& c : report.checks)
      arr.push_back({{"law", c.name},
                     {"status", c.status},
                     {"measured", c.measured},
                     {"expected", c.expected},
                     {"deviation", c.deviation},
                     {"tolerance", c.tolerance},
                     {"note", c.note}});
    out << json{{"all_ok", report.all_ok()}, {"checks", arr}}.dump(2) << "\n";
  } else {
    for (const auto& c : report.checks) {
      char line[256];
      std::snprintf(line, sizeof line, "%-16s %-4s", c.name.c_str(),
                    c.status.c_str());
      out << line;
      if (c.status != "SKIP")
        out << " measured=" << num(c.measured)
            << " expected=" << num(c.expected) << " dev=" << num(c.deviation)
            << " tol=" << num(c.tolerance);
      if (!c.note.empty()) out << "  (" << c.note << ")";
      out << "\n";
    }
    out << (report.all_ok() ? "all scaling laws OK\n"
                            : "scaling-law verification FAILED\n");
  }
  write_output(opts, out.str());
  return report.all_ok() ? 0 : 1;
}

int run_simulate(const CommonOpts& opts, std::uint64_t seed, int trials,
                 double sample_rate, double duration, double kick_scale) {
  const Scenario sc = load_scenario(opts);
  SimSpec spec;
  spec.config = sc.config;
  spec.seed = seed;
  spec.kick_trials = trials;
  spec.kick_scale = kick_scale;
  if (sample_rate > 0.0) spec.sample_rate = sample_rate;
  if (duration > 0.0) {
    // Round the requested duration up to a power-of-two sample count.
    const double fs = spec.sample_rate > 0.0
                          ? spec.sample_rate
                          : 40.0 * sc.config.oscillator.omega_m / (2.0 * kPi);
    std::size_t want = 2;
    while (static_cast<double>(want) < duration * fs) want <<= 1;
    spec.samples = want;
  }
  if (!opts.quiet)
    std::cerr << "running " << spec.kick_trials << " kick + "
              << spec.noise_trials << " noise trials...\n";
  const SimSummary s = matched_filter_snr(spec);

  const double dev = std::abs(s.empirical_snr - s.analytic_snr);
  const bool verdict_ok = dev < 3.0 * s.combined_se;
  if (s.band_truncation_warning)
    std::cerr << "warning: simulated band captures only part of the matched "
                 "filter (band threshold deviates from the full integral by "
                 ">10%); raise the sample rate\n";

  std::ostringstream out;
  if (opts.format == "csv") {
    // Each noise trial contributes several matched-filter lags; report the
    // owning trial so rows group the way the record was generated.
    const std::size_t lags = std::max<std::size_t>(
        1, s.noise_outputs.size() /
               static_cast<std::size_t>(std::max(1, s.noise_trials)));
    out << "trial,kind,filter_output\n";
    for (std::size_t i = 0; i < s.kick_peaks.size(); ++i)
      out << i << ",kick," << num(s.kick_peaks[i]) << "\n";
    for (std::size_t i = 0; i < s.noise_outputs.size(); ++i)
      out << i / lags << ",noise," << num(s.noise_outputs[i]) << "\n";
    out << "# empirical_snr=" << num(s.empirical_snr)
        << " analytic_snr=" << num(s.analytic_snr)
        << " combined_se=" << num(s.combined_se)
        << " verdict=" << (verdict_ok ? "PASS" : "FAIL") << "\n";
  } else {
    json jf = json::array();
    for (const auto& f : s.filters)
      jf.push_back({{"name", f.name},
                    {"analytic_snr", f.analytic_snr},
                    {"matched_over_this", f.matched_over_this}});
    const json j = {
        {"samples", s.samples},
        {"sample_rate_hz", s.sample_rate},
        {"duration_s", s.duration},
        {"band_threshold_kg_m_per_s", std::sqrt(kHbar) * s.band_threshold},
        {"full_threshold_kg_m_per_s", std::sqrt(kHbar) * s.full_threshold},
        {"band_truncation_warning", s.band_truncation_warning},
        {"injected_dp_kg_m_per_s", std::sqrt(kHbar) * s.injected_dp},
        {"analytic_snr", s.analytic_snr},
        {"empirical_snr", s.empirical_snr},
        {"combined_se", s.combined_se},
        {"verdict", verdict_ok ? "PASS" : "FAIL"},
        {"noise_sigma", s.noise_sigma},
        {"noise_skewness", s.noise_skewness},
        {"noise_excess_kurtosis", s.noise_excess_kurtosis},
        {"kick_trials", s.kick_trials},
        {"noise_trials", s.noise_trials},
        {"noise_samples", s.noise_samples},
        {"seed", seed},
        {"kick_outputs", s.kick_peaks},
        {"noise_outputs", s.noise_outputs},
        {"filters", jf},
    };
    out << j.dump(2) << "\n";
  }
  write_output(opts, out.str());
  if (!opts.quiet)
    std::cerr << "empirical SNR " << num(s.empirical_snr) << " vs analytic "
              << num(s.analytic_snr) << " (|diff| = " << num(dev) << ", 3 SE = "
              << num(3.0 * s.combined_se) << "): "
              << (verdict_ok ? "PASS" : "FAIL") << "\n";
  return verdict_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"optomechanical impulse noise calculator"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool optimize = false;
  std::uint64_t seed = 20260822ULL;
  int trials = 1000;
  double sample_rate = 0.0; // Hz; 0 = auto
  double duration = 0.0;    // s; 0 = auto
  double kick_scale = 1.0;  // injected dp in units of the band threshold
  for (auto* sub :
       {app.add_subcommand("psd", "force-equivalent noise spectrum"),
        app.add_subcommand("threshold", "momentum detection threshold"),
        app.add_subcommand("optimal-angle", "squeezing angle theta*(nu)"),
        app.add_subcommand("verify", "check analytic scaling laws"),
        app.add_subcommand("simulate", "matched-filter Monte Carlo")}) {
    sub->add_option("--config", opts.config_path,
                    "scenario file (defaults: built-in table-1 system)");
    sub->add_option("--out", opts.out_path, "output path (default stdout)");
    sub->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--quiet", opts.quiet, "suppress progress on stderr");
  }
  app.get_subcommand("threshold")
      ->add_flag("--optimize", optimize, "optimize the coupling per point");
  auto* sim = app.get_subcommand("simulate");
  sim->add_option("--seed", seed, "root RNG seed");
  sim->add_option("--trials", trials, "number of kick trials");
  sim->add_option("--sample-rate", sample_rate, "Hz (default 40 f_m)");
  sim->add_option("--duration", duration,
                  "seconds, rounded up to a power-of-two sample count");
  sim->add_option("--kick-scale", kick_scale,
                  "injected kick in units of the band-limited threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("psd")) return run_psd(opts);
    if (app.got_subcommand("threshold")) return run_threshold(opts, optimize);
    if (app.got_subcommand("optimal-angle")) return run_optimal_angle(opts);
    if (app.got_subcommand("verify")) return run_verify(opts);
    return run_simulate(opts, seed, trials, sample_rate, duration, kick_scale);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what()
              << " (partial=" << e.partial() << ", err=" << e.error() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}
