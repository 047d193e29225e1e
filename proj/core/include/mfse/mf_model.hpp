#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mfse/hermitian.hpp"

namespace mfse {

// Stacking configuration for the multi-frame vector of one frequency bin:
// order consecutive frames, newest first, with the newest entry lookahead
// frames ahead of the output time stamp. selection_index is the position
// of the frame the filters treat as current; 0 selects the newest stacked
// entry.
struct MfBufferConfig {
  int order = 5;
  int lookahead = 2;
  int selection_index = 0;
};

void validate(const MfBufferConfig& cfg);

// Stacked frames for every bin at one output step. taps are bin-major:
// bin(b)[i] is the i-th newest frame of bin b.
struct MfFrame {
  int order = 0;
  int num_bins = 0;
  int t = 0;  // output time stamp
  std::vector<cdouble> taps;

  std::span<const cdouble> bin(int b) const {
    return {taps.data() + static_cast<std::size_t>(b) * order,
            static_cast<std::size_t>(order)};
  }
  std::span<cdouble> bin(int b) {
    return {taps.data() + static_cast<std::size_t>(b) * order,
            static_cast<std::size_t>(order)};
  }
};

// Sliding history of analyzed frames that emits the stacked multi-frame
// vector once the look-ahead frame for an output step has arrived. History
// before the first pushed frame reads as zeros, so emission starts with
// output step 0 at the (lookahead + 1)-th push.
class MfBuffer {
 public:
  MfBuffer(const MfBufferConfig& cfg, int num_bins);

  const MfBufferConfig& config() const { return cfg_; }
  int num_bins() const { return num_bins_; }

  // Pushes one analyzed frame (all bins). Returns the stacked frame for
  // output step t = pushes - 1 - lookahead, or nullopt while the look-ahead
  // requirement is unmet. Throws BinCountMismatch on a wrong bin count.
  std::optional<MfFrame> push_frame(std::span<const cdouble> frame);

 private:
  MfBufferConfig cfg_;
  int num_bins_;
  long pushed_ = 0;
  std::vector<cdouble> history_;  // ring of order frames, frame-major
};

// Interframe correlation vector of one bin, normalized so the entry at
// the selection index is exactly one.
struct IfcVector {
  int order = 0;
  std::array<cdouble, kMaxOrder> v{};

  std::span<const cdouble> get() const {
    return {v.data(), static_cast<std::size_t>(order)};
  }
  std::span<cdouble> get() {
    return {v.data(), static_cast<std::size_t>(order)};
  }

  static IfcVector unit(int order, int selection_index);
};

// Speech power at the selection index: the corresponding diagonal entry
// of the speech covariance, clamped to >= 0.
double speech_psd(const HermitianMatrix& speech_cov, int selection_index);

// Interframe correlation vector read off the speech covariance: the
// selection column divided by the selection diagonal entry. Throws
// ZeroSpeechPsd when that entry is at or below 1e-30; callers then treat
// the bin as speech-absent.
IfcVector ifc_from_cov(const HermitianMatrix& speech_cov,
                       int selection_index);

// Noisy covariance assembled from the model decomposition:
// phi_s * ifc * ifc^H + undesired_cov.
HermitianMatrix compose_phixx(double phi_s, const IfcVector& ifc,
                              const HermitianMatrix& undesired_cov);

}  // namespace mfse
