#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ominc/core.hpp"

namespace ominc {

// Time-domain Monte Carlo of the matched-filter impulse search.
//
// Noise synthesis: Hermitian spectral synthesis on an N-point grid,
// <|F(nu_k)|^2> = T S(nu_k) with independent complex Gaussian bins (DC
// excluded, Nyquist real), inverse real FFT.  The injected kick is a single-
// sample impulse dp/dt, whose DFT is exactly the matched-filter template, so
// with the injected dp equal to the discrete band-limited threshold
//   dp_band = [ sum_k dnu/(2 pi S_k) ]^{-1/2}
// the analytic SNR is exactly kick_scale, independent of discretization.
// The estimator is read at the known kick time (no max-over-lag bias).
//
// Reproducibility: trial t draws from mt19937_64 seeded with
// splitmix64(splitmix64(seed) + t) (noise-only trials continue the same
// numbering after the kick trials); Gaussians come from an explicit
// Box-Muller, so equal seeds give bit-identical runs.
struct SimSpec {
  SensorConfig config;
  double sample_rate = 0.0; // Hz; 0 -> 40 * (omega_m / 2 pi)
  std::size_t samples = 0;  // 0 -> smallest power of two with dnu <= gamma/20
  int kick_trials = 1000;
  int noise_trials = 250;
  int noise_lags = 40;      // per noise trial, clamped to keep spacing > 1/gamma
  double kick_scale = 1.0;  // injected dp in units of dp_band
  std::uint64_t seed = 20260822ULL;
};

struct FilterScore {
  std::string name;
  double analytic_snr = 0.0;      // for the same injected kick
  double matched_over_this = 0.0; // >= 1 by Cauchy-Schwarz
};

struct SimSummary {
  std::size_t samples = 0;
  double sample_rate = 0.0; // Hz
  double duration = 0.0;    // s
  double band_threshold = 0.0; // dp_band, natural units
  double full_threshold = 0.0; // continuous-integral dp, natural units
  bool band_truncation_warning = false; // |band/full - 1| > 10%
  double injected_dp = 0.0;    // natural units
  double analytic_snr = 0.0;   // = kick_scale by construction
  double empirical_snr = 0.0;
  double combined_se = 0.0;    // sqrt(1/N_kick + snr^2/(2 N_noise))
  double mean_estimate = 0.0;  // mean filter output at the kick time
  double noise_sigma = 0.0;    // std of noise-only filter outputs
  double noise_skewness = 0.0;
  double noise_excess_kurtosis = 0.0;
  int kick_trials = 0;
  int noise_trials = 0;
  std::size_t noise_samples = 0; // = noise_trials * lags actually used
  std::vector<FilterScore> filters;
  std::vector<double> kick_peaks;    // filter output at the kick time, per trial
  std::vector<double> noise_outputs; // noise-only filter outputs (all lags)
};

// PSD-shaped Gaussian noise: psd_grid holds S(nu_k), k = 0..N/2, on the grid
// nu_k = 2 pi k fs / N; returns N = 2 (len-1) samples.  psd_grid[0] is ignored
// (DC excluded).  Throws ConfigError unless len-1 is a power of two.
std::vector<double> synthesize_noise(const std::vector<double>& psd_grid,
                                     double sample_rate, std::uint64_t seed);

// Full Monte Carlo: kick trials + noise-only trials + filter comparison.
SimSummary matched_filter_snr(const SimSpec& spec);

// Seed-splitting helpers shared with tests.
std::uint64_t splitmix64(std::uint64_t z);
std::uint64_t stream_seed(std::uint64_t root, std::uint64_t index);

} // namespace ominc
