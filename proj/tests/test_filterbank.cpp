#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "mfse/filterbank.hpp"
#include "mfse/metrics.hpp"
#include "mfse/synth.hpp"

using namespace mfse;

namespace {

// Reconstruction error over the steady-state interior, in dB. The output
// of synthesize() reconstructs input sample n at position n + window_len.
double interior_roundtrip_db(std::span<const double> x,
                             const FilterbankConfig& cfg) {
  const auto y = synthesize(analyze(x, cfg), cfg);
  const int w = cfg.window_len;
  double es = 0.0, en = 0.0;
  for (std::size_t n = w; n + w < x.size(); ++n) {
    const double got = y[n + w];
    es += x[n] * x[n];
    en += (x[n] - got) * (x[n] - got);
  }
  return 10.0 * std::log10(en / es);
}

}  // namespace

TEST_SUITE("filterbank") {

TEST_CASE("default geometry") {
  FilterbankConfig cfg;
  CHECK(cfg.sample_rate == 24000);
  CHECK(cfg.window_len == 96);
  CHECK(cfg.hop == 24);
  CHECK(cfg.num_bins() == 49);
  CHECK(cfg.bin_width_hz() == doctest::Approx(250.0));
  CHECK(cfg.bin_center_hz(16) == doctest::Approx(4000.0));
  CHECK(cfg.frame_rate_hz() == doctest::Approx(1000.0));
}

TEST_CASE("sqrt hann window shape and overlap-add constant") {
  const auto w = sqrt_hann_window(96);
  REQUIRE(w.size() == 96);
  CHECK(w[0] == 0.0);
  for (int n = 1; n < 96; ++n) {
    CHECK(w[n] == doctest::Approx(std::sin(std::numbers::pi * n / 96.0))
                      .epsilon(1e-12));
  }
  // squared window tiles to a constant at 4x overlap
  for (int n = 0; n < 24; ++n) {
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double v = w[n + 24 * k];
      acc += v * v;
    }
    CHECK(acc == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("validate rejects broken geometry") {
  FilterbankConfig cfg;
  cfg.hop = 25;  // does not divide 96
  CHECK_THROWS_AS(validate(cfg), ConfigInvalid);

  FilterbankConfig odd;
  odd.window_len = 95;
  odd.analysis_window = sqrt_hann_window(95);
  odd.synthesis_window = odd.analysis_window;
  CHECK_THROWS_AS(validate(odd), ConfigInvalid);

  FilterbankConfig bare;
  bare.analysis_window.clear();
  CHECK_THROWS_AS(validate(bare), ConfigInvalid);
}

TEST_CASE("analyze frame accounting") {
  FilterbankConfig cfg;
  const std::vector<double> x(96 + 24 * 9, 0.0);
  const auto spec = analyze(x, cfg);
  CHECK(spec.frame_count == 10);
  CHECK(spec.num_bins == 49);
  CHECK(spec.frame_rate_hz == doctest::Approx(1000.0));

  const std::vector<double> shorty(95, 0.0);
  CHECK_THROWS_AS(analyze(shorty, cfg), SignalTooShort);
}

TEST_CASE("analyze concentrates a bin-center tone on its bin") {
  FilterbankConfig cfg;
  const int b = 8;  // 2 kHz
  std::vector<double> x(24000);
  for (std::size_t n = 0; n < x.size(); ++n) {
    x[n] = std::cos(2.0 * std::numbers::pi * cfg.bin_center_hz(b) * n /
                    cfg.sample_rate);
  }
  const auto spec = analyze(x, cfg);
  const auto frame = spec.frame(spec.frame_count / 2);
  int argmax = 0;
  for (int k = 1; k < spec.num_bins; ++k) {
    if (std::abs(frame[k]) > std::abs(frame[argmax])) argmax = k;
  }
  CHECK(argmax == b);
  // bins two away sit past the mainlobe; the first sidelobe of the
  // length-96 sine window is near -23 dB
  CHECK(std::abs(frame[b + 2]) < 0.1 * std::abs(frame[b]));
  CHECK(std::abs(frame[b - 2]) < 0.1 * std::abs(frame[b]));
}

TEST_CASE("analyze is linear") {
  FilterbankConfig cfg;
  const auto a = white_noise(31, 4000);
  const auto b = white_noise(32, 4000);
  std::vector<double> sum(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) sum[n] = a[n] + 0.5 * b[n];
  const auto sa = analyze(a, cfg);
  const auto sb = analyze(b, cfg);
  const auto ss = analyze(sum, cfg);
  for (std::size_t k = 0; k < ss.coeff.size(); ++k) {
    CHECK(std::abs(ss.coeff[k] - sa.coeff[k] - 0.5 * sb.coeff[k]) < 1e-10);
  }
}

TEST_CASE("round trip reconstructs the interior to near machine precision") {
  FilterbankConfig cfg;
  const auto x = white_noise(5, 24000);
  CHECK(interior_roundtrip_db(x, cfg) < -150.0);
}

TEST_CASE("round trip on shaped noise and a tone") {
  FilterbankConfig cfg;
  CHECK(interior_roundtrip_db(speech_shaped_noise(6, 24000, 24000), cfg) <
        -150.0);
  CHECK(interior_roundtrip_db(tone_complex(24000, 24000, 750.0, 3), cfg) <
        -150.0);
}

TEST_CASE("synthesize output length and leading delay") {
  FilterbankConfig cfg;
  const auto x = white_noise(7, 96 + 24 * 7);
  const auto spec = analyze(x, cfg);
  const auto y = synthesize(spec, cfg);
  CHECK(y.size() == (spec.frame_count - 1) * 24 + 2 * 96);
  for (int n = 0; n < 96; ++n) {
    CHECK(y[n] == 0.0);  // nothing can be emitted before one full window
  }
}

TEST_CASE("latency report matches the measured round-trip delay") {
  FilterbankConfig cfg;
  for (int l : {0, 2, 5}) {
    const auto rep = latency_report(cfg, l);
    CHECK(rep.bank_delay_samples == 96);
    CHECK(rep.total_samples == 96 + 24 * l);
    CHECK(rep.bank_delay_ms == doctest::Approx(4.0));
    CHECK(rep.lookahead_ms == doctest::Approx(l * 1.0));
    CHECK(rep.total_ms == doctest::Approx(4.0 + l * 1.0));
  }
}

TEST_CASE("cross-correlation confirms the reported bank delay") {
  FilterbankConfig cfg;
  const auto x = white_noise(9, 12000);
  const auto y = synthesize(analyze(x, cfg), cfg);
  const long lag = xcorr_peak_lag(x, y, 4 * 96);
  CHECK(lag == latency_report(cfg, 0).bank_delay_samples);
}

}  // TEST_SUITE
