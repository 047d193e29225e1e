#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mfse/mf_filters.hpp"
#include "mfse/mf_model.hpp"

namespace mfse {

// Everything a filter needs for one bin at one output step.
struct EstimatorOutput {
  IfcVector ifc;
  double phi_s = 0.0;
  // Noisy covariance for Wiener and MvdrNoisy, undesired covariance for
  // MvdrNoise, expressed in the configured parameterization.
  CovParameterization cov;
};

struct EstimatorConfig {
  int order = 5;
  int selection_index = 0;
  double smoothing = 0.96;  // recursive averaging coefficient
  CovKind cov_kind = CovKind::HermitianOfInverse;
  FilterKind filter = FilterKind::MvdrNoise;
  double loading = kDiagonalLoading;
};

void validate(const EstimatorConfig& cfg);

// Reference-driven second-order statistics: recursive averages of the
// stacked speech and noise outer products per bin, combined into the
// covariance the configured filter consumes. Speech-absent bins (speech
// power below tolerance) yield a unit correlation vector and zero speech
// power, so downstream filters fall back to benign behavior.
class OracleEstimator {
 public:
  OracleEstimator(const EstimatorConfig& cfg, int num_bins);

  const EstimatorConfig& config() const { return cfg_; }

  // Folds the stacked clean and noise vectors of bin b into the running
  // statistics and returns the filter inputs for this step.
  EstimatorOutput update_bin(int b, std::span<const cdouble> speech_taps,
                             std::span<const cdouble> noise_taps);

 private:
  EstimatorConfig cfg_;
  int num_bins_;
  std::vector<HermitianMatrix> speech_cov_;
  std::vector<HermitianMatrix> noise_cov_;
};

// Recursive per-bin power averages of two reference spectra. Drives the
// single-tap gain applied above the multi-frame band edge.
class ScalarPsdTracker {
 public:
  ScalarPsdTracker(double smoothing, int num_bins);

  void update(std::span<const cdouble> speech_frame,
              std::span<const cdouble> noise_frame);

  // phi_s / (phi_s + phi_z), or 0 when both powers vanish.
  double wiener_gain(int b) const;

 private:
  double smoothing_;
  std::vector<double> speech_psd_;
  std::vector<double> noise_psd_;
};

// Deep-filtering weight sequence loaded from a file, replayed
// frame-synchronously: step t of bin b gets weight frame t.
class WeightSequence {
 public:
  WeightSequence(int order, int num_bins, int frame_count,
                 std::vector<cdouble> taps);

  int order() const { return order_; }
  int num_bins() const { return num_bins_; }
  int frame_count() const { return frame_count_; }

  std::span<const cdouble> taps(int t, int b) const;

 private:
  int order_;
  int num_bins_;
  int frame_count_;
  std::vector<cdouble> taps_;  // [t][b][i]
};

}  // namespace mfse
