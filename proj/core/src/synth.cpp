#include "mfse/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "mfse/errors.hpp"

namespace mfse {

namespace {

double rms(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / std::max<std::size_t>(1, x.size()));
}

void scale_to_rms(std::vector<double>& x, double target) {
  const double r = rms(x);
  if (!(r > 0.0)) return;
  const double g = target / r;
  for (double& v : x) v *= g;
}

// One-pole low-pass, cutoff in Hz.
void one_pole_lowpass(std::vector<double>& x, double cutoff_hz,
                      int sample_rate) {
  const double a =
      std::exp(-2.0 * std::numbers::pi * cutoff_hz / sample_rate);
  double state = 0.0;
  for (double& v : x) {
    state = a * state + (1.0 - a) * v;
    v = state;
  }
}

}  // namespace

std::vector<double> white_noise(std::uint64_t seed, std::size_t len) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(len);
  for (double& v : x) v = dist(rng);
  scale_to_rms(x, 1.0);
  return x;
}

std::vector<double> speech_shaped_noise(std::uint64_t seed, std::size_t len,
                                        int sample_rate) {
  auto x = white_noise(seed, len);
  one_pole_lowpass(x, 900.0, sample_rate);
  one_pole_lowpass(x, 2500.0, sample_rate);
  scale_to_rms(x, 1.0);
  return x;
}

std::vector<double> babble_noise(std::uint64_t seed, std::size_t len,
                                 int sample_rate) {
  std::vector<double> sum(len, 0.0);
  constexpr int kTalkers = 6;
  for (int k = 0; k < kTalkers; ++k) {
    auto voice = speech_shaped_noise(seed * 1315423911u + k + 1, len,
                                     sample_rate);
    // Slow random envelope imitating syllable rates around 3-5 Hz.
    auto env = white_noise(seed * 2654435761u + k + 101, len);
    one_pole_lowpass(env, 4.0, sample_rate);
    double peak = 0.0;
    for (double v : env) peak = std::max(peak, std::abs(v));
    const double inv = peak > 0.0 ? 1.0 / peak : 0.0;
    for (std::size_t n = 0; n < len; ++n) {
      sum[n] += voice[n] * (0.4 + 0.6 * std::abs(env[n]) * inv);
    }
  }
  scale_to_rms(sum, 1.0);
  return sum;
}

std::vector<double> harmonic_source(std::uint64_t seed, std::size_t len,
                                    int sample_rate, double max_hz) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> f0_dist(120.0, 240.0);
  std::uniform_real_distribution<double> phase_dist(
      0.0, 2.0 * std::numbers::pi);

  const double f0 = f0_dist(rng);
  const int harmonics =
      std::max(1, static_cast<int>(std::floor(max_hz / f0)));

  std::vector<double> amp(harmonics);
  std::vector<double> phase(harmonics);
  for (int k = 0; k < harmonics; ++k) {
    amp[k] = std::pow(k + 1.0, -0.7);
    phase[k] = phase_dist(rng);
  }

  const double vibrato_hz = 4.0 + 2.0 * phase_dist(rng) / (2.0 * std::numbers::pi);
  const double vibrato_phase = phase_dist(rng);
  const double am_hz = 2.0 + phase_dist(rng) / (2.0 * std::numbers::pi);
  const double am_phase = phase_dist(rng);

  std::vector<double> x(len, 0.0);
  const double dt = 1.0 / sample_rate;
  // Integrated instantaneous frequency keeps harmonics phase-coherent
  // under vibrato.
  double cycle = 0.0;
  for (std::size_t n = 0; n < len; ++n) {
    const double t = n * dt;
    const double f_inst =
        f0 * (1.0 + 0.003 * std::sin(2.0 * std::numbers::pi * vibrato_hz * t +
                                     vibrato_phase));
    cycle += f_inst * dt;
    double v = 0.0;
    for (int k = 0; k < harmonics; ++k) {
      v += amp[k] *
           std::sin(2.0 * std::numbers::pi * (k + 1) * cycle + phase[k]);
    }
    const double env =
        0.75 + 0.25 * std::sin(2.0 * std::numbers::pi * am_hz * t + am_phase);
    x[n] = v * env;
  }
  scale_to_rms(x, 0.1);
  return x;
}

std::vector<double> tone_complex(std::size_t len, int sample_rate,
                                 double base_hz, int num_harmonics) {
  std::vector<double> x(len, 0.0);
  for (std::size_t n = 0; n < len; ++n) {
    const double t = static_cast<double>(n) / sample_rate;
    double v = 0.0;
    for (int k = 1; k <= num_harmonics; ++k) {
      v += std::sin(2.0 * std::numbers::pi * base_hz * k * t + 0.37 * k) / k;
    }
    x[n] = v;
  }
  scale_to_rms(x, 0.1);
  return x;
}

MixedClip mix_at_snr(std::vector<double> clean, std::vector<double> noise,
                     double snr_db) {
  if (clean.size() != noise.size()) {
    throw LengthMismatch("clean and noise lengths differ");
  }
  const double clean_rms = rms(clean);
  const double noise_rms = rms(noise);
  if (!(clean_rms > 0.0) || !(noise_rms > 0.0)) {
    throw ZeroReference("cannot mix silent signals");
  }
  const double target_noise_rms = clean_rms / std::pow(10.0, snr_db / 20.0);
  const double g = target_noise_rms / noise_rms;
  for (double& v : noise) v *= g;

  MixedClip clip;
  clip.snr_db = snr_db;
  clip.noisy.resize(clean.size());
  double peak = 0.0;
  for (std::size_t n = 0; n < clean.size(); ++n) {
    clip.noisy[n] = clean[n] + noise[n];
    peak = std::max(peak, std::abs(clip.noisy[n]));
  }
  if (peak > 0.99) {
    const double s = 0.7 / peak;
    for (std::size_t n = 0; n < clean.size(); ++n) {
      clean[n] *= s;
      noise[n] *= s;
      clip.noisy[n] = clean[n] + noise[n];
    }
  }
  clip.clean = std::move(clean);
  clip.noise = std::move(noise);
  return clip;
}

std::vector<MixedClip> synthetic_corpus(std::uint64_t seed, int num_clips,
                                        double seconds, int sample_rate) {
  if (num_clips < 1 || !(seconds > 0.0)) {
    throw ConfigInvalid("corpus needs at least one clip of positive length");
  }
  const std::size_t len =
      static_cast<std::size_t>(std::lround(seconds * sample_rate));
  const double snrs[3] = {0.0, -5.0, 5.0};

  std::vector<MixedClip> corpus;
  corpus.reserve(num_clips);
  for (int i = 0; i < num_clips; ++i) {
    auto clean = harmonic_source(seed + 17u * i, len, sample_rate);
    const NoiseKind kind = (i % 2 == 0) ? NoiseKind::White : NoiseKind::Babble;
    auto noise = (kind == NoiseKind::White)
                     ? white_noise(seed + 1000u + 31u * i, len)
                     : babble_noise(seed + 2000u + 31u * i, len, sample_rate);
    auto clip = mix_at_snr(std::move(clean), std::move(noise), snrs[i % 3]);
    clip.noise_kind = kind;
    clip.name = "clip" + std::to_string(i) + "_" +
                (kind == NoiseKind::White ? "white" : "babble") + "_snr" +
                std::to_string(static_cast<int>(snrs[i % 3]));
    corpus.push_back(std::move(clip));
  }
  return corpus;
}

}  // namespace mfse
