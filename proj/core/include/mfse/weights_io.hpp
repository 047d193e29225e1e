#pragma once

#include <string>

#include "mfse/estimators.hpp"

namespace mfse {

// Binary tap-sequence file, little endian:
//   bytes 0..3   magic "MFW1"
//   bytes 4..7   u32 order (taps per bin)
//   bytes 8..11  u32 bins
//   bytes 12..15 u32 frames
// followed by frames * bins * order complex taps as interleaved f32
// (re, im) pairs, taps fastest, then bins, then frames.
WeightSequence read_weight_file(const std::string& path);
void write_weight_file(const std::string& path, const WeightSequence& seq);

// Convenience builder: every frame of every bin carries a unit tap at the
// given index, so applying the sequence reproduces the stacked input.
WeightSequence identity_weights(int order, int num_bins, int frame_count,
                                int unit_index = 0);

}  // namespace mfse
