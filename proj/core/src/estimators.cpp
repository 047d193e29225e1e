#include "mfse/estimators.hpp"

#include <string>

namespace mfse {

void validate(const EstimatorConfig& cfg) {
  if (cfg.order < 1 || cfg.order > kMaxOrder) {
    throw ConfigInvalid("estimator order must be in [1, " +
                        std::to_string(kMaxOrder) + "]");
  }
  if (cfg.selection_index < 0 || cfg.selection_index >= cfg.order) {
    throw ConfigInvalid("selection index must lie in [0, order)");
  }
  if (cfg.smoothing < 0.0 || cfg.smoothing >= 1.0) {
    throw ConfigInvalid("smoothing coefficient must lie in [0, 1)");
  }
  if (cfg.loading < 0.0) {
    throw ConfigInvalid("diagonal loading must be >= 0");
  }
  if (cfg.filter == FilterKind::DeepFilter) {
    throw ConfigInvalid("the oracle estimator serves statistical filters");
  }
}

OracleEstimator::OracleEstimator(const EstimatorConfig& cfg, int num_bins)
    : cfg_(cfg), num_bins_(num_bins) {
  validate(cfg);
  if (num_bins < 1) {
    throw ConfigInvalid("bin count must be >= 1");
  }
  speech_cov_.assign(num_bins_, HermitianMatrix(cfg_.order));
  noise_cov_.assign(num_bins_, HermitianMatrix(cfg_.order));
}

EstimatorOutput OracleEstimator::update_bin(
    int b, std::span<const cdouble> speech_taps,
    std::span<const cdouble> noise_taps) {
  if (b < 0 || b >= num_bins_) {
    throw ConfigInvalid("bin index out of range");
  }
  const double lam = cfg_.smoothing;
  speech_cov_[b] = accumulate_outer(speech_cov_[b], speech_taps, lam, 1.0 - lam);
  noise_cov_[b] = accumulate_outer(noise_cov_[b], noise_taps, lam, 1.0 - lam);

  EstimatorOutput out;
  out.phi_s = speech_psd(speech_cov_[b], cfg_.selection_index);
  if (out.phi_s > 1e-30) {
    out.ifc = ifc_from_cov(speech_cov_[b], cfg_.selection_index);
  } else {
    // Speech-absent: unit vector and zero power.
    out.ifc = IfcVector::unit(cfg_.order, cfg_.selection_index);
    out.phi_s = 0.0;
  }

  // The mixture statistics follow from uncorrelated speech and noise.
  const HermitianMatrix noisy_cov = add(speech_cov_[b], noise_cov_[b]);
  const HermitianMatrix* source = &noisy_cov;
  HermitianMatrix undesired(cfg_.order);
  if (cfg_.filter == FilterKind::MvdrNoise) {
    undesired = rank_one_update(noisy_cov, out.ifc.get(), -out.phi_s);
    source = &undesired;
  }

  switch (cfg_.cov_kind) {
    case CovKind::Direct:
      out.cov = CovParameterization::direct(*source);
      break;
    case CovKind::Hermitian:
      out.cov = CovParameterization::hermitian(psd_factor(*source));
      break;
    case CovKind::Inverse: {
      // Producing an inverse-form payload requires an inversion here, so
      // the source is loaded first like any other inverted matrix.
      const auto f = HpdFactorization::decompose(
          cfg_.loading > 0.0 ? diag_load(*source, cfg_.loading) : *source);
      out.cov = CovParameterization::inverse(f.inverse());
      break;
    }
    case CovKind::HermitianOfInverse: {
      const auto f = HpdFactorization::decompose(
          cfg_.loading > 0.0 ? diag_load(*source, cfg_.loading) : *source);
      out.cov = CovParameterization::hermitian_of_inverse(f.inverse_factor());
      break;
    }
  }
  return out;
}

ScalarPsdTracker::ScalarPsdTracker(double smoothing, int num_bins)
    : smoothing_(smoothing) {
  if (smoothing < 0.0 || smoothing >= 1.0) {
    throw ConfigInvalid("smoothing coefficient must lie in [0, 1)");
  }
  if (num_bins < 1) {
    throw ConfigInvalid("bin count must be >= 1");
  }
  speech_psd_.assign(num_bins, 0.0);
  noise_psd_.assign(num_bins, 0.0);
}

void ScalarPsdTracker::update(std::span<const cdouble> speech_frame,
                              std::span<const cdouble> noise_frame) {
  if (speech_frame.size() != speech_psd_.size() ||
      noise_frame.size() != noise_psd_.size()) {
    throw BinCountMismatch("reference frame bin count mismatch");
  }
  for (std::size_t b = 0; b < speech_psd_.size(); ++b) {
    speech_psd_[b] = smoothing_ * speech_psd_[b] +
                     (1.0 - smoothing_) * std::norm(speech_frame[b]);
    noise_psd_[b] = smoothing_ * noise_psd_[b] +
                    (1.0 - smoothing_) * std::norm(noise_frame[b]);
  }
}

double ScalarPsdTracker::wiener_gain(int b) const {
  const double denom = speech_psd_[b] + noise_psd_[b];
  if (!(denom > 1e-30)) return 0.0;
  return speech_psd_[b] / denom;
}

WeightSequence::WeightSequence(int order, int num_bins, int frame_count,
                               std::vector<cdouble> taps)
    : order_(order),
      num_bins_(num_bins),
      frame_count_(frame_count),
      taps_(std::move(taps)) {
  if (order < 1 || order > kMaxOrder || num_bins < 1 || frame_count < 1) {
    throw ConfigInvalid("weight sequence dimensions out of range");
  }
  const std::size_t expected = static_cast<std::size_t>(order) * num_bins *
                               static_cast<std::size_t>(frame_count);
  if (taps_.size() != expected) {
    throw ConfigInvalid("weight sequence holds " +
                        std::to_string(taps_.size()) + " taps, expected " +
                        std::to_string(expected));
  }
}

std::span<const cdouble> WeightSequence::taps(int t, int b) const {
  if (t < 0 || t >= frame_count_ || b < 0 || b >= num_bins_) {
    throw ConfigInvalid("weight sequence index out of range");
  }
  const std::size_t offset =
      (static_cast<std::size_t>(t) * num_bins_ + b) * order_;
  return {taps_.data() + offset, static_cast<std::size_t>(order_)};
}

}  // namespace mfse
