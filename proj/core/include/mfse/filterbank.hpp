#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mfse/errors.hpp"

namespace mfse {

using cdouble = std::complex<double>;

// Windowed uniform DFT filter bank in the hearing-aid regime: 24 kHz
// sample rate, 96-sample (4 ms) window, 24-sample (1 ms) hop, 49 one-sided
// bins at 250 Hz spacing. Analysis and synthesis both use a periodic
// square-root Hann window, so their product satisfies the constant
// overlap-add condition at 75% overlap.
struct FilterbankConfig {
  int sample_rate = 24000;
  int window_len = 96;
  int hop = 24;
  std::vector<double> analysis_window;
  std::vector<double> synthesis_window;

  FilterbankConfig();

  int num_bins() const { return window_len / 2 + 1; }
  double bin_width_hz() const {
    return static_cast<double>(sample_rate) / window_len;
  }
  double bin_center_hz(int b) const { return b * bin_width_hz(); }
  double frame_rate_hz() const {
    return static_cast<double>(sample_rate) / hop;
  }
};

// Periodic square-root Hann window of the given length.
std::vector<double> sqrt_hann_window(int len);

// Throws ConfigInvalid unless the hop divides the window length and both
// windows have window_len entries.
void validate(const FilterbankConfig& cfg);

// One-sided complex spectrogram, frame-major: coeff[t * num_bins + b].
// Frame t of the source signal covers samples [t * hop, t * hop + window).
struct ComplexSpectrogram {
  int num_bins = 0;
  int frame_count = 0;
  double frame_rate_hz = 0.0;
  double bin_width_hz = 0.0;
  std::vector<cdouble> coeff;

  std::span<cdouble> frame(int t) {
    return {coeff.data() + static_cast<std::size_t>(t) * num_bins,
            static_cast<std::size_t>(num_bins)};
  }
  std::span<const cdouble> frame(int t) const {
    return {coeff.data() + static_cast<std::size_t>(t) * num_bins,
            static_cast<std::size_t>(num_bins)};
  }
  cdouble& at(int t, int b) {
    return coeff[static_cast<std::size_t>(t) * num_bins + b];
  }
  cdouble at(int t, int b) const {
    return coeff[static_cast<std::size_t>(t) * num_bins + b];
  }
};

// Windowed one-sided DFT of every complete frame. Throws SignalTooShort
// when the signal does not cover one window.
ComplexSpectrogram analyze(std::span<const double> signal,
                           const FilterbankConfig& cfg);

// Overlap-add resynthesis. The output carries the causal availability
// delay of the bank baked in as a content shift of window_len samples:
// output[n] reconstructs the analyzed signal at n - window_len. Output
// length is (frames - 1) * hop + 2 * window_len. Interior samples are
// normalized by the accumulated window product, so a round trip through
// analyze() reproduces the input there to near machine precision.
std::vector<double> synthesize(const ComplexSpectrogram& spec,
                               const FilterbankConfig& cfg);

struct LatencyReport {
  int bank_delay_samples = 0;
  int total_samples = 0;
  double bank_delay_ms = 0.0;
  double lookahead_ms = 0.0;
  double total_ms = 0.0;
};

// Measures the analysis-synthesis delay as the cross-correlation peak of
// a white-noise round trip, then adds lookahead_frames * hop.
LatencyReport latency_report(const FilterbankConfig& cfg,
                             int lookahead_frames);

}  // namespace mfse
