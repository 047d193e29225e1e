#include "mfse/filterbank.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mfse {

namespace {

// Precomputed one-sided DFT tables for one configuration. Forward rows
// fold the analysis window into the twiddles; inverse rows carry the
// 1/window_len scale and the factor 2 for the conjugate-symmetric bins.
struct DftTables {
  int window_len;
  int num_bins;
  std::vector<cdouble> forward;  // [b * window_len + n]
  std::vector<cdouble> inverse;  // [b * window_len + n]

  explicit DftTables(const FilterbankConfig& cfg)
      : window_len(cfg.window_len), num_bins(cfg.num_bins()) {
    const double w = window_len;
    forward.resize(static_cast<std::size_t>(num_bins) * window_len);
    inverse.resize(static_cast<std::size_t>(num_bins) * window_len);
    for (int b = 0; b < num_bins; ++b) {
      const double bin_weight = (b == 0 || b == window_len / 2) ? 1.0 : 2.0;
      for (int n = 0; n < window_len; ++n) {
        const double phase = 2.0 * std::numbers::pi * b * n / w;
        const cdouble tw(std::cos(phase), std::sin(phase));
        forward[static_cast<std::size_t>(b) * window_len + n] =
            std::conj(tw) * cfg.analysis_window[n];
        inverse[static_cast<std::size_t>(b) * window_len + n] =
            tw * (bin_weight / w);
      }
    }
  }
};

// Fraction of the peak window-product sum below which overlap-add samples
// are left unnormalized (signal edges where too few frames overlap).
constexpr double kNormFloorRatio = 1e-8;

}  // namespace

FilterbankConfig::FilterbankConfig()
    : analysis_window(sqrt_hann_window(window_len)),
      synthesis_window(sqrt_hann_window(window_len)) {}

std::vector<double> sqrt_hann_window(int len) {
  std::vector<double> w(len);
  for (int n = 0; n < len; ++n) {
    const double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / len);
    w[n] = std::sqrt(hann);
  }
  return w;
}

void validate(const FilterbankConfig& cfg) {
  if (cfg.sample_rate <= 0 || cfg.window_len <= 0 || cfg.hop <= 0) {
    throw ConfigInvalid("filter bank sizes must be positive");
  }
  if (cfg.window_len % 2 != 0) {
    throw ConfigInvalid("window length must be even");
  }
  if (cfg.window_len % cfg.hop != 0) {
    throw ConfigInvalid("hop must divide the window length");
  }
  if (cfg.analysis_window.size() != static_cast<std::size_t>(cfg.window_len) ||
      cfg.synthesis_window.size() !=
          static_cast<std::size_t>(cfg.window_len)) {
    throw ConfigInvalid("window tables must have window_len entries");
  }
}

ComplexSpectrogram analyze(std::span<const double> signal,
                           const FilterbankConfig& cfg) {
  validate(cfg);
  const int w = cfg.window_len;
  const int hop = cfg.hop;
  if (signal.size() < static_cast<std::size_t>(w)) {
    throw SignalTooShort("signal of " + std::to_string(signal.size()) +
                         " samples is shorter than one window of " +
                         std::to_string(w));
  }
  const DftTables tables(cfg);
  const int frames = static_cast<int>((signal.size() - w) / hop) + 1;
  const int bins = cfg.num_bins();

  ComplexSpectrogram spec;
  spec.num_bins = bins;
  spec.frame_count = frames;
  spec.frame_rate_hz = cfg.frame_rate_hz();
  spec.bin_width_hz = cfg.bin_width_hz();
  spec.coeff.resize(static_cast<std::size_t>(frames) * bins);

  for (int t = 0; t < frames; ++t) {
    const double* x = signal.data() + static_cast<std::size_t>(t) * hop;
    auto out = spec.frame(t);
    for (int b = 0; b < bins; ++b) {
      const cdouble* row =
          tables.forward.data() + static_cast<std::size_t>(b) * w;
      cdouble acc = 0.0;
      for (int n = 0; n < w; ++n) acc += row[n] * x[n];
      out[b] = acc;
    }
  }
  return spec;
}

std::vector<double> synthesize(const ComplexSpectrogram& spec,
                               const FilterbankConfig& cfg) {
  validate(cfg);
  if (spec.num_bins != cfg.num_bins()) {
    throw ConfigMismatch("spectrogram has " + std::to_string(spec.num_bins) +
                         " bins but the configuration produces " +
                         std::to_string(cfg.num_bins()));
  }
  if (spec.frame_count <= 0) {
    throw ConfigMismatch("spectrogram holds no frames");
  }
  const int w = cfg.window_len;
  const int hop = cfg.hop;
  const int frames = spec.frame_count;
  const DftTables tables(cfg);

  const std::size_t span = static_cast<std::size_t>(frames - 1) * hop + w;
  std::vector<double> ola(span, 0.0);
  std::vector<double> norm(span, 0.0);
  std::vector<double> frame_time(w);

  for (int t = 0; t < frames; ++t) {
    auto bins = spec.frame(t);
    for (int n = 0; n < w; ++n) {
      double acc = 0.0;
      for (int b = 0; b < spec.num_bins; ++b) {
        const cdouble c =
            tables.inverse[static_cast<std::size_t>(b) * w + n];
        const cdouble y = bins[b];
        acc += y.real() * c.real() - y.imag() * c.imag();
      }
      frame_time[n] = acc;
    }
    const std::size_t base = static_cast<std::size_t>(t) * hop;
    for (int n = 0; n < w; ++n) {
      ola[base + n] += frame_time[n] * cfg.synthesis_window[n];
      norm[base + n] += cfg.analysis_window[n] * cfg.synthesis_window[n];
    }
  }

  double norm_peak = 0.0;
  for (double v : norm) norm_peak = std::max(norm_peak, v);
  const double floor = kNormFloorRatio * norm_peak;
  for (std::size_t n = 0; n < span; ++n) {
    if (norm[n] > floor) ola[n] /= norm[n];
  }

  std::vector<double> out(span + w, 0.0);
  std::copy(ola.begin(), ola.end(), out.begin() + w);
  return out;
}

LatencyReport latency_report(const FilterbankConfig& cfg,
                             int lookahead_frames) {
  validate(cfg);
  if (lookahead_frames < 0) {
    throw ConfigInvalid("lookahead must be >= 0");
  }
  std::mt19937_64 rng(0x1a7e9c5u);
  std::normal_distribution<double> dist(0.0, 0.25);
  std::vector<double> probe(cfg.sample_rate / 2);
  for (double& v : probe) v = dist(rng);

  const auto spec = analyze(probe, cfg);
  const auto out = synthesize(spec, cfg);

  const int max_lag = 4 * cfg.window_len;
  int best_lag = 0;
  double best = -1.0;
  for (int lag = 0; lag <= max_lag; ++lag) {
    double acc = 0.0;
    const std::size_t count =
        std::min(probe.size(), out.size() - static_cast<std::size_t>(lag));
    for (std::size_t n = 0; n < count; ++n) acc += probe[n] * out[n + lag];
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }

  LatencyReport report;
  report.bank_delay_samples = best_lag;
  report.total_samples = best_lag + lookahead_frames * cfg.hop;
  const double ms_per_sample = 1000.0 / cfg.sample_rate;
  report.bank_delay_ms = report.bank_delay_samples * ms_per_sample;
  report.lookahead_ms = lookahead_frames * cfg.hop * ms_per_sample;
  report.total_ms = report.total_samples * ms_per_sample;
  return report;
}

}  // namespace mfse
