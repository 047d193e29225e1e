#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mfse {

// Deterministic test-signal generators. Every function is a pure function
// of its arguments, so corpora regenerate bit-identically from a seed.

enum class NoiseKind { White, Babble };

// Stationary white Gaussian noise, unit RMS.
std::vector<double> white_noise(std::uint64_t seed, std::size_t len);

// Low-pass filtered noise with a crowd-like amplitude modulation,
// unit RMS.
std::vector<double> babble_noise(std::uint64_t seed, std::size_t len,
                                 int sample_rate);

// Noise shaped like a long-term speech spectrum: white noise through two
// one-pole low-pass stages, unit RMS.
std::vector<double> speech_shaped_noise(std::uint64_t seed, std::size_t len,
                                        int sample_rate);

// Harmonic voice-like source: stacked harmonics of a fundamental drawn
// from [120, 240] Hz, band-limited below max_hz, with a slow amplitude
// modulation and a gentle vibrato. RMS 0.1.
std::vector<double> harmonic_source(std::uint64_t seed, std::size_t len,
                                    int sample_rate, double max_hz = 3800.0);

// Pure tone complex with harmonics locked to multiples of base_hz, fixed
// amplitude profile 1/k, RMS 0.1. With base_hz at a bin center of the
// analysis bank every component falls exactly on one bin.
std::vector<double> tone_complex(std::size_t len, int sample_rate,
                                 double base_hz, int num_harmonics);

struct MixedClip {
  std::vector<double> clean;
  std::vector<double> noise;
  std::vector<double> noisy;  // clean + noise, exactly
  double snr_db = 0.0;
  NoiseKind noise_kind = NoiseKind::White;
  std::string name;
};

// Scales the noise to the requested SNR and returns the exact sum. The
// mixture is rescaled to peak at 0.7 when it would clip, preserving the
// SNR.
MixedClip mix_at_snr(std::vector<double> clean, std::vector<double> noise,
                     double snr_db);

// Evaluation corpus: clip i uses a harmonic source seeded by (seed, i),
// alternating white and babble noise, at SNRs cycling through
// {0, -5, +5} dB.
std::vector<MixedClip> synthetic_corpus(std::uint64_t seed, int num_clips,
                                        double seconds, int sample_rate);

}  // namespace mfse
