#pragma once

#include <string>
#include <vector>

#include "mfse/errors.hpp"

namespace mfse {

// Mono WAV, 16-bit PCM or 32-bit float, at the exact sample rate the
// caller requires. No resampling and no channel mixing: anything else is
// rejected with IoError.
std::vector<double> read_wav(const std::string& path, int required_rate);

enum class WavFormat { Float32, Pcm16 };

// Samples outside [-1, 1] are clipped when writing 16-bit PCM.
void write_wav(const std::string& path, const std::vector<double>& samples,
               int sample_rate, WavFormat format = WavFormat::Float32);

}  // namespace mfse
