#pragma once

#include <functional>
#include <span>

#include "mfse/errors.hpp"

namespace mfse {

// Scale-invariant SDR in dB: the estimate is projected onto the reference
// and scored as 10*log10(|target|^2 / |target - estimate|^2). Capped at
// +100 dB when the residual vanishes; floored at -100 dB when the
// projection vanishes together with the residual. Throws ZeroReference on
// an all-zero reference and LengthMismatch on unequal lengths.
double si_sdr_db(std::span<const double> reference,
                 std::span<const double> estimate);

// Mean over 10 ms frames of the per-frame ratio of estimate energy to
// residual energy in dB, each frame clamped to [-10, 35] dB. Frames where
// both energies vanish score the upper clamp (nothing to get wrong).
double seg_snr_db(std::span<const double> reference,
                  std::span<const double> estimate, int sample_rate,
                  double frame_ms = 10.0);

struct RtfReport {
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  int runs = 0;
  double audio_seconds = 0.0;
};

// Real-time factor of a processing closure over audio_seconds of input:
// one warm-up run, then at least five timed runs; the report carries the
// median with its dispersion, never a single sample.
RtfReport measure_rtf(const std::function<void()>& run, double audio_seconds,
                      int runs = 5);

// Lag in [0, max_lag] that maximizes sum_n a[n] * b[n + lag]; locates b as
// a delayed copy of a.
int xcorr_peak_lag(std::span<const double> a, std::span<const double> b,
                   int max_lag);

}  // namespace mfse
