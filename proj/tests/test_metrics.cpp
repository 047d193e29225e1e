#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "mfse/metrics.hpp"
#include "mfse/synth.hpp"

using namespace mfse;

namespace {

// One full period of a sine and a cosine are exactly orthogonal over the
// sampling grid, which makes SI-SDR values analytic.
std::vector<double> sine(std::size_t len, int periods, double amp) {
  std::vector<double> x(len);
  for (std::size_t n = 0; n < len; ++n) {
    x[n] = amp * std::sin(2.0 * std::numbers::pi * periods * n / len);
  }
  return x;
}

std::vector<double> cosine(std::size_t len, int periods, double amp) {
  std::vector<double> x(len);
  for (std::size_t n = 0; n < len; ++n) {
    x[n] = amp * std::cos(2.0 * std::numbers::pi * periods * n / len);
  }
  return x;
}

double energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("si-sdr caps for scaled copies of the reference") {
  const auto ref = sine(4800, 10, 0.5);
  std::vector<double> twice(ref.size()), neg(ref.size());
  for (std::size_t n = 0; n < ref.size(); ++n) {
    twice[n] = 2.0 * ref[n];
    neg[n] = -ref[n];
  }
  CHECK(si_sdr_db(ref, ref) == 100.0);
  CHECK(si_sdr_db(ref, twice) == 100.0);
  CHECK(si_sdr_db(ref, neg) == 100.0);
}

TEST_CASE("si-sdr of orthogonal noise at a known energy ratio") {
  const std::size_t len = 4800;
  const auto ref = sine(len, 10, 1.0);
  const auto noise = cosine(len, 10, 1.0);
  const double scale = std::sqrt(energy(ref) / (100.0 * energy(noise)));
  std::vector<double> est(len);
  for (std::size_t n = 0; n < len; ++n) {
    est[n] = ref[n] + scale * noise[n];
  }
  CHECK(std::abs(si_sdr_db(ref, est) - 20.0) < 1e-9);
}

TEST_CASE("si-sdr is invariant to estimate scaling") {
  const auto ref = sine(4800, 7, 1.0);
  auto est = cosine(4800, 7, 0.3);
  for (std::size_t n = 0; n < est.size(); ++n) est[n] += ref[n];
  std::vector<double> scaled(est.size());
  for (std::size_t n = 0; n < est.size(); ++n) scaled[n] = 3.0 * est[n];
  CHECK(std::abs(si_sdr_db(ref, est) - si_sdr_db(ref, scaled)) < 1e-9);
}

TEST_CASE("si-sdr decreases monotonically with orthogonal noise") {
  const std::size_t len = 4800;
  const auto ref = sine(len, 10, 1.0);
  const auto noise = cosine(len, 10, 1.0);
  double prev = 1e9;
  for (int step = 1; step <= 10; ++step) {
    std::vector<double> est(len);
    for (std::size_t n = 0; n < len; ++n) {
      est[n] = ref[n] + 0.02 * step * noise[n];
    }
    const double v = si_sdr_db(ref, est);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("si-sdr floors when the projection vanishes") {
  const auto ref = sine(4800, 10, 1.0);
  const std::vector<double> zeros(ref.size(), 0.0);
  CHECK(si_sdr_db(ref, zeros) == -100.0);
  // alternating estimate against a constant reference: the dot product
  // cancels pairwise, so the projection is zero in exact arithmetic
  const std::vector<double> ones(4800, 1.0);
  std::vector<double> alternating(4800);
  for (std::size_t n = 0; n < alternating.size(); ++n) {
    alternating[n] = (n % 2 == 0) ? 1.0 : -1.0;
  }
  CHECK(si_sdr_db(ones, alternating) == -100.0);
}

TEST_CASE("si-sdr input validation") {
  const std::vector<double> zeros(100, 0.0);
  const std::vector<double> ones(100, 1.0);
  const std::vector<double> off(99, 1.0);
  CHECK_THROWS_AS(si_sdr_db(zeros, ones), ZeroReference);
  CHECK_THROWS_AS(si_sdr_db(ones, off), LengthMismatch);
}

TEST_CASE("seg-snr clamps at the pinned extremes") {
  const auto ref = sine(2400, 5, 0.8);
  const std::vector<double> zeros(ref.size(), 0.0);
  CHECK(seg_snr_db(ref, ref, 24000) == 35.0);
  CHECK(seg_snr_db(ref, zeros, 24000) == -10.0);
  CHECK(seg_snr_db(zeros, zeros, 24000) == 35.0);
}

TEST_CASE("seg-snr of an equal-energy residual frame is zero") {
  // one 10 ms frame at 24 kHz: 240 samples; estimate energy equals
  // residual energy when the estimate is half the reference
  std::vector<double> ref(240, 1.0);
  std::vector<double> est(240, 0.5);
  CHECK(seg_snr_db(ref, est, 24000) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("seg-snr averages per-frame values") {
  // frame 1: est == ref -> 35; frame 2: est == ref/2 -> 0
  std::vector<double> ref(480, 1.0);
  std::vector<double> est(480, 1.0);
  for (int n = 240; n < 480; ++n) est[n] = 0.5;
  CHECK(seg_snr_db(ref, est, 24000) == doctest::Approx(17.5).epsilon(1e-12));
}

TEST_CASE("measure_rtf reports at least five runs with dispersion") {
  const auto report = measure_rtf([] {
    volatile double acc = 0.0;
    for (int i = 0; i < 200000; ++i) acc = acc + 1.0 / (i + 1);
  }, 1.0, 3);
  CHECK(report.runs >= 5);
  CHECK(report.min <= report.median);
  CHECK(report.median <= report.max);
  CHECK(report.median > 0.0);
  CHECK(report.audio_seconds == 1.0);
}

TEST_CASE("xcorr locates a known delay") {
  const auto x = white_noise(77, 4000);
  std::vector<double> y(x.size(), 0.0);
  const int d = 137;
  for (std::size_t n = d; n < y.size(); ++n) y[n] = x[n - d];
  CHECK(xcorr_peak_lag(x, y, 300) == d);
}

}  // TEST_SUITE
