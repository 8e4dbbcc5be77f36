#include "ominc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <utility>

#include <fftw3.h>

#include "ominc/constants.hpp"
#include "ominc/errors.hpp"
#include "ominc/spectra.hpp"
#include "ominc/threshold.hpp"

namespace ominc {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(splitmix64(root) + index);
}

namespace {

// Explicit Box-Muller (std::normal_distribution's sequence is
// implementation-defined; this one is reproducible everywhere).
class Gaussian {
public:
  explicit Gaussian(std::uint64_t seed) : rng_(seed) {}
  double operator()() {
    if (have_) {
      have_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * kPi * u2;
    spare_ = rad * std::sin(ang);
    have_ = true;
    return rad * std::cos(ang);
  }

private:
  double uniform() { // [0, 1) with 53 random bits
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  }
  std::mt19937_64 rng_;
  bool have_ = false;
  double spare_ = 0.0;
};

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Shared FFT workspace: half-complex spectrum buffer plus two real buffers.
struct FftWork {
  std::size_t n;
  fftw_complex* spec;
  double* time;
  double* filt;
  fftw_plan c2r_synth;  // spec -> time
  fftw_plan r2c;        // time -> spec
  fftw_plan c2r_filter; // spec -> filt

  explicit FftWork(std::size_t n_samples) : n(n_samples) {
    spec = fftw_alloc_complex(n / 2 + 1);
    time = fftw_alloc_real(n);
    filt = fftw_alloc_real(n);
    const int ni = static_cast<int>(n);
    c2r_synth = fftw_plan_dft_c2r_1d(ni, spec, time, FFTW_ESTIMATE);
    r2c = fftw_plan_dft_r2c_1d(ni, time, spec, FFTW_ESTIMATE);
    c2r_filter = fftw_plan_dft_c2r_1d(ni, spec, filt, FFTW_ESTIMATE);
  }
  ~FftWork() {
    fftw_destroy_plan(c2r_synth);
    fftw_destroy_plan(r2c);
    fftw_destroy_plan(c2r_filter);
    fftw_free(spec);
    fftw_free(time);
    fftw_free(filt);
  }
  FftWork(const FftWork&) = delete;
  FftWork& operator=(const FftWork&) = delete;
};

// Fill spec with Hermitian Gaussian draws, <|X_k|^2> = T S_k, DC = 0,
// Nyquist real; then time = c2r(spec)/T is the stationary series.
void draw_spectrum(FftWork& w, const std::vector<double>& psd, double big_t,
                   std::uint64_t seed) {
  Gaussian gauss(seed);
  w.spec[0][0] = 0.0;
  w.spec[0][1] = 0.0;
  const std::size_t half = w.n / 2;
  for (std::size_t k = 1; k < half; ++k) {
    const double sigma = std::sqrt(0.5 * big_t * psd[k]);
    w.spec[k][0] = sigma * gauss();
    w.spec[k][1] = sigma * gauss();
  }
  w.spec[half][0] = std::sqrt(big_t * psd[half]) * gauss();
  w.spec[half][1] = 0.0;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

} // namespace

std::vector<double> synthesize_noise(const std::vector<double>& psd_grid,
                                     double sample_rate, std::uint64_t seed) {
  if (psd_grid.size() < 3 || !is_pow2(psd_grid.size() - 1))
    throw ConfigError("sim.psd_grid", "need 2^k + 1 PSD samples (k >= 1)");
  if (!(sample_rate > 0.0))
    throw ConfigError("sim.sample_rate", "must be positive");
  const std::size_t n = 2 * (psd_grid.size() - 1);
  FftWork w(n);
  const double big_t = static_cast<double>(n) / sample_rate;
  draw_spectrum(w, psd_grid, big_t, seed);
  fftw_execute(w.c2r_synth);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = w.time[i] / big_t;
  return out;
}

SimSummary matched_filter_snr(const SimSpec& spec) {
  validate(spec.config);
  const auto& osc = spec.config.oscillator;
  if (osc.gamma <= 0.0)
    throw SingularError("simulation requires gamma > 0");
  if (spec.kick_trials < 1 || spec.noise_trials < 1)
    throw ConfigError("sim.trials", "need at least one kick and noise trial");

  SimSummary out;
  out.sample_rate = spec.sample_rate > 0.0
                        ? spec.sample_rate
                        : 40.0 * osc.omega_m / (2.0 * kPi);
  if (spec.samples != 0) {
    if (!is_pow2(spec.samples))
      throw ConfigError("sim.samples", "must be a power of two");
    out.samples = spec.samples;
  } else {
    // dnu = 2 pi fs / N <= gamma / 20
    std::size_t n = 1024;
    while (2.0 * kPi * out.sample_rate / static_cast<double>(n) >
           osc.gamma / 20.0)
      n <<= 1;
    out.samples = n;
  }
  const std::size_t n = out.samples;
  const std::size_t half = n / 2;
  const double dt = 1.0 / out.sample_rate;
  const double big_t = static_cast<double>(n) * dt;
  out.duration = big_t;

  // Model PSD on the DFT grid.
  std::vector<double> psd(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    const double nu = 2.0 * kPi * static_cast<double>(k) / big_t;
    psd[k] = force_psd_total(spec.config, nu);
  }

  // Discrete band-limited threshold: kappa_sum = sum_k dnu/(2 pi S_k) over
  // both signs, DC excluded, Nyquist once.
  double kappa_sum = 0.0;
  for (std::size_t k = 1; k < half; ++k) kappa_sum += 2.0 / psd[k];
  kappa_sum += 1.0 / psd[half];
  kappa_sum /= big_t;
  out.band_threshold = 1.0 / std::sqrt(kappa_sum);
  out.full_threshold = momentum_threshold(spec.config).delta_p;
  out.band_truncation_warning =
      std::abs(out.band_threshold / out.full_threshold - 1.0) > 0.10;

  out.injected_dp = spec.kick_scale * out.band_threshold;
  out.analytic_snr = out.injected_dp / out.band_threshold;

  // Matched-filter weights folded with the FFT normalization: the filter
  // output series is O = c2r(w .* r2c(x)) / N with w_k = dp_band / S_k,
  // which has unit variance and mean kick_scale at the kick sample.
  std::vector<double> weight(half + 1);
  weight[0] = 0.0;
  for (std::size_t k = 1; k <= half; ++k)
    weight[k] = out.band_threshold / psd[k] / static_cast<double>(n);

  FftWork work(n);
  const std::size_t kick_at = n / 2;

  const auto run_trial = [&](std::uint64_t trial_index, bool with_kick) {
    draw_spectrum(work, psd, big_t, stream_seed(spec.seed, trial_index));
    fftw_execute(work.c2r_synth);
    for (std::size_t i = 0; i < n; ++i) work.time[i] /= big_t;
    if (with_kick) work.time[kick_at] += out.injected_dp / dt;
    fftw_execute(work.r2c);
    for (std::size_t k = 0; k <= half; ++k) {
      work.spec[k][0] *= weight[k];
      work.spec[k][1] *= weight[k];
    }
    fftw_execute(work.c2r_filter);
  };

  std::vector<double> peaks;
  peaks.reserve(spec.kick_trials);
  for (int t = 0; t < spec.kick_trials; ++t) {
    run_trial(static_cast<std::uint64_t>(t), true);
    peaks.push_back(work.filt[kick_at]);
  }

  // Noise-only outputs sampled at lags spaced by at least 1/gamma.
  int lags = spec.noise_lags;
  const std::size_t margin = n / 16;
  const std::size_t span = n - 2 * margin;
  while (lags > 1 &&
         static_cast<double>(span / static_cast<std::size_t>(lags)) * dt <
             1.0 / osc.gamma)
    --lags;
  const std::size_t step = span / static_cast<std::size_t>(lags);
  std::vector<double> noise;
  noise.reserve(static_cast<std::size_t>(spec.noise_trials) *
                static_cast<std::size_t>(lags));
  for (int t = 0; t < spec.noise_trials; ++t) {
    run_trial(static_cast<std::uint64_t>(spec.kick_trials + t), false);
    for (int j = 0; j < lags; ++j)
      noise.push_back(work.filt[margin + static_cast<std::size_t>(j) * step]);
  }

  const double mean_peak = mean_of(peaks);
  const double noise_mean = mean_of(noise);
  double var = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : noise) {
    const double d = x - noise_mean;
    var += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  const double nn = static_cast<double>(noise.size());
  var /= nn;
  m3 /= nn;
  m4 /= nn;
  const double sigma = std::sqrt(var);

  out.mean_estimate = mean_peak;
  out.noise_sigma = sigma;
  out.noise_skewness = m3 / (var * sigma);
  out.noise_excess_kurtosis = m4 / (var * var) - 3.0;
  out.empirical_snr = mean_peak / sigma;
  out.kick_trials = spec.kick_trials;
  out.noise_trials = spec.noise_trials;
  out.noise_samples = noise.size();
  out.combined_se =
      std::sqrt(1.0 / static_cast<double>(spec.kick_trials) +
                out.empirical_snr * out.empirical_snr / (2.0 * nn));

  // Analytic SNR of simple alternative filters for the same kick;
  // SNR_u = dp (2 sum u_k + u_half) / sqrt(T (2 sum u_k^2 S_k + u_half^2 S_half)).
  const auto filter_snr = [&](const std::function<double(double)>& amp) {
    double wsum = 0.0, wssum = 0.0;
    for (std::size_t k = 1; k <= half; ++k) {
      const double nu = 2.0 * kPi * static_cast<double>(k) / big_t;
      const double u = amp(nu);
      const double mult = k == half ? 1.0 : 2.0;
      wsum += mult * u;
      wssum += mult * u * u * psd[k];
    }
    if (wsum <= 0.0 || wssum <= 0.0) return 0.0;
    return out.injected_dp * wsum / std::sqrt(big_t * wssum);
  };
  const double wm = osc.omega_m;
  const std::vector<std::pair<std::string, std::function<double(double)>>>
      alts = {
          {"flat", [](double) { return 1.0; }},
          {"lowpass_0.1wm",
           [wm](double nu) { return 1.0 / std::sqrt(1.0 + std::pow(nu / (0.1 * wm), 2)); }},
          {"lowpass_wm",
           [wm](double nu) { return 1.0 / std::sqrt(1.0 + std::pow(nu / wm, 2)); }},
          {"lowpass_10wm",
           [wm](double nu) { return 1.0 / std::sqrt(1.0 + std::pow(nu / (10.0 * wm), 2)); }},
          {"highpass_0.1wm",
           [wm](double nu) {
             const double x = nu / (0.1 * wm);
             return x / std::sqrt(1.0 + x * x);
           }},
          {"highpass_wm",
           [wm](double nu) {
             const double x = nu / wm;
             return x / std::sqrt(1.0 + x * x);
           }},
          {"highpass_10wm",
           [wm](double nu) {
             const double x = nu / (10.0 * wm);
             return x / std::sqrt(1.0 + x * x);
           }},
          {"bandpass_lorentz", [wm, &osc](double nu) {
             const double hw = 0.5 * osc.gamma;
             return 1.0 / (1.0 + std::pow((nu - wm) / hw, 2));
           }},
      };
  for (const auto& [name, amp] : alts) {
    FilterScore fs;
    fs.name = name;
    fs.analytic_snr = filter_snr(amp);
    fs.matched_over_this =
        fs.analytic_snr > 0.0 ? out.analytic_snr / fs.analytic_snr : 0.0;
    out.filters.push_back(std::move(fs));
  }
  out.kick_peaks = std::move(peaks);
  out.noise_outputs = std::move(noise);
  return out;
}

} // namespace ominc
