#include "mfse/mf_model.hpp"

#include <string>

namespace mfse {

namespace {

constexpr double kSpeechPsdTolerance = 1e-30;

}  // namespace

void validate(const MfBufferConfig& cfg) {
  if (cfg.order < 1 || cfg.order > kMaxOrder) {
    throw ConfigInvalid("stacked order must be in [1, " +
                        std::to_string(kMaxOrder) + "]");
  }
  if (cfg.lookahead < 0) {
    throw ConfigInvalid("lookahead must be >= 0");
  }
  if (cfg.selection_index < 0 || cfg.selection_index >= cfg.order) {
    throw ConfigInvalid("selection index must lie in [0, order)");
  }
}

MfBuffer::MfBuffer(const MfBufferConfig& cfg, int num_bins)
    : cfg_(cfg), num_bins_(num_bins) {
  validate(cfg);
  if (num_bins < 1) {
    throw ConfigInvalid("bin count must be >= 1");
  }
  history_.assign(
      static_cast<std::size_t>(cfg_.order) * num_bins_, cdouble(0.0, 0.0));
}

std::optional<MfFrame> MfBuffer::push_frame(std::span<const cdouble> frame) {
  if (frame.size() != static_cast<std::size_t>(num_bins_)) {
    throw BinCountMismatch("pushed frame has " + std::to_string(frame.size()) +
                           " bins, buffer expects " +
                           std::to_string(num_bins_));
  }
  const int slot = static_cast<int>(pushed_ % cfg_.order);
  std::copy(frame.begin(), frame.end(),
            history_.begin() + static_cast<std::size_t>(slot) * num_bins_);
  ++pushed_;

  const long newest = pushed_ - 1;
  const long t = newest - cfg_.lookahead;
  if (t < 0) return std::nullopt;

  MfFrame out;
  out.order = cfg_.order;
  out.num_bins = num_bins_;
  out.t = static_cast<int>(t);
  out.taps.assign(
      static_cast<std::size_t>(num_bins_) * cfg_.order, cdouble(0.0, 0.0));
  for (int i = 0; i < cfg_.order; ++i) {
    const long src = newest - i;
    if (src < 0) break;  // zero history before the first push
    const int src_slot = static_cast<int>(src % cfg_.order);
    const cdouble* row =
        history_.data() + static_cast<std::size_t>(src_slot) * num_bins_;
    for (int b = 0; b < num_bins_; ++b) {
      out.taps[static_cast<std::size_t>(b) * cfg_.order + i] = row[b];
    }
  }
  return out;
}

IfcVector IfcVector::unit(int order, int selection_index) {
  IfcVector out;
  out.order = order;
  out.v[selection_index] = 1.0;
  return out;
}

double speech_psd(const HermitianMatrix& speech_cov, int selection_index) {
  if (selection_index < 0 || selection_index >= speech_cov.order()) {
    throw ConfigInvalid("selection index out of range");
  }
  const double p = speech_cov.diag(selection_index);
  return p > 0.0 ? p : 0.0;
}

IfcVector ifc_from_cov(const HermitianMatrix& speech_cov,
                       int selection_index) {
  if (selection_index < 0 || selection_index >= speech_cov.order()) {
    throw ConfigInvalid("selection index out of range");
  }
  const double psd = speech_cov.diag(selection_index);
  if (!(psd > kSpeechPsdTolerance)) {
    throw ZeroSpeechPsd("speech power " + std::to_string(psd) +
                        " at selection index " +
                        std::to_string(selection_index) +
                        " is below tolerance");
  }
  IfcVector out;
  out.order = speech_cov.order();
  for (int i = 0; i < out.order; ++i) {
    out.v[i] = speech_cov(i, selection_index) / psd;
  }
  out.v[selection_index] = 1.0;
  return out;
}

HermitianMatrix compose_phixx(double phi_s, const IfcVector& ifc,
                              const HermitianMatrix& undesired_cov) {
  if (phi_s < 0.0) {
    throw ConfigInvalid("speech power must be >= 0");
  }
  if (ifc.order != undesired_cov.order()) {
    throw OrderMismatch("correlation vector order " +
                        std::to_string(ifc.order) +
                        " does not match covariance order " +
                        std::to_string(undesired_cov.order()));
  }
  return rank_one_update(undesired_cov, ifc.get(), phi_s);
}

}  // namespace mfse
