#include "mfse/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace mfse {

namespace {

constexpr double kSiSdrCapDb = 100.0;
constexpr double kSegSnrFloorDb = -10.0;
constexpr double kSegSnrCeilDb = 35.0;

}  // namespace

double si_sdr_db(std::span<const double> reference,
                 std::span<const double> estimate) {
  if (reference.size() != estimate.size()) {
    throw LengthMismatch("reference has " + std::to_string(reference.size()) +
                         " samples, estimate has " +
                         std::to_string(estimate.size()));
  }
  double ref_energy = 0.0;
  double dot = 0.0;
  for (std::size_t n = 0; n < reference.size(); ++n) {
    ref_energy += reference[n] * reference[n];
    dot += reference[n] * estimate[n];
  }
  if (!(ref_energy > 0.0)) {
    throw ZeroReference("reference signal carries no energy");
  }
  const double alpha = dot / ref_energy;
  double target_energy = 0.0;
  double residual_energy = 0.0;
  for (std::size_t n = 0; n < reference.size(); ++n) {
    const double target = alpha * reference[n];
    const double residual = target - estimate[n];
    target_energy += target * target;
    residual_energy += residual * residual;
  }
  if (!(target_energy > 0.0)) return -kSiSdrCapDb;
  if (!(residual_energy > 0.0)) return kSiSdrCapDb;
  return std::min(kSiSdrCapDb,
                  10.0 * std::log10(target_energy / residual_energy));
}

double seg_snr_db(std::span<const double> reference,
                  std::span<const double> estimate, int sample_rate,
                  double frame_ms) {
  if (reference.size() != estimate.size()) {
    throw LengthMismatch("reference has " + std::to_string(reference.size()) +
                         " samples, estimate has " +
                         std::to_string(estimate.size()));
  }
  if (reference.empty()) {
    throw ZeroReference("cannot score empty signals");
  }
  const int frame_len =
      std::max(1, static_cast<int>(std::lround(sample_rate * frame_ms / 1000.0)));

  double sum = 0.0;
  int frames = 0;
  for (std::size_t start = 0; start < reference.size();
       start += static_cast<std::size_t>(frame_len)) {
    const std::size_t end =
        std::min(reference.size(), start + static_cast<std::size_t>(frame_len));
    double est_energy = 0.0;
    double res_energy = 0.0;
    for (std::size_t n = start; n < end; ++n) {
      est_energy += estimate[n] * estimate[n];
      const double r = reference[n] - estimate[n];
      res_energy += r * r;
    }
    double snr;
    if (!(res_energy > 0.0)) {
      snr = kSegSnrCeilDb;
    } else if (!(est_energy > 0.0)) {
      snr = kSegSnrFloorDb;
    } else {
      snr = std::clamp(10.0 * std::log10(est_energy / res_energy),
                       kSegSnrFloorDb, kSegSnrCeilDb);
    }
    sum += snr;
    ++frames;
  }
  return sum / frames;
}

RtfReport measure_rtf(const std::function<void()>& run, double audio_seconds,
                      int runs) {
  if (!(audio_seconds > 0.0)) {
    throw ConfigInvalid("audio duration must be positive");
  }
  runs = std::max(runs, 5);

  run();  // warm-up

  std::vector<double> rtf(runs);
  for (int i = 0; i < runs; ++i) {
    const auto start = std::chrono::steady_clock::now();
    run();
    const auto stop = std::chrono::steady_clock::now();
    const double seconds =
        std::chrono::duration<double>(stop - start).count();
    rtf[i] = seconds / audio_seconds;
  }
  std::sort(rtf.begin(), rtf.end());

  RtfReport report;
  report.runs = runs;
  report.audio_seconds = audio_seconds;
  report.min = rtf.front();
  report.max = rtf.back();
  report.median = (runs % 2 == 1)
                      ? rtf[runs / 2]
                      : 0.5 * (rtf[runs / 2 - 1] + rtf[runs / 2]);
  return report;
}

int xcorr_peak_lag(std::span<const double> a, std::span<const double> b,
                   int max_lag) {
  if (max_lag < 0 || b.size() <= static_cast<std::size_t>(max_lag)) {
    throw ConfigInvalid("lag range exceeds signal length");
  }
  int best_lag = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int lag = 0; lag <= max_lag; ++lag) {
    const std::size_t count = std::min(a.size(), b.size() - lag);
    double acc = 0.0;
    for (std::size_t n = 0; n < count; ++n) acc += a[n] * b[n + lag];
    if (acc > best) {
      best = acc;
      best_lag = lag;
    }
  }
  return best_lag;
}

}  // namespace mfse
