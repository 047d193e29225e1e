#pragma once

#include <array>
#include <span>
#include <string>
#include <variant>

#include "mfse/hermitian.hpp"
#include "mfse/mf_model.hpp"

namespace mfse {

enum class FilterKind {
  DeepFilter,  // externally supplied complex taps, applied as-is
  Wiener,      // minimum-MSE solution on the noisy covariance
  MvdrNoisy,   // distortionless filter on the noisy covariance
  MvdrNoise,   // distortionless filter on the undesired covariance
};

// How an estimated covariance is expressed before it reaches a filter.
enum class CovKind {
  Direct,              // the covariance itself
  Inverse,             // its inverse
  Hermitian,           // factor H with H H^H = covariance
  HermitianOfInverse,  // factor H with H H^H = inverse covariance
};

const char* to_string(FilterKind k);
const char* to_string(CovKind k);
FilterKind filter_kind_from_string(const std::string& s);
CovKind cov_kind_from_string(const std::string& s);

// One estimated covariance in one of the four payload forms.
struct CovParameterization {
  CovKind kind = CovKind::Direct;
  std::variant<HermitianMatrix, FactorMatrix> payload;

  static CovParameterization direct(HermitianMatrix m);
  static CovParameterization inverse(HermitianMatrix m);
  static CovParameterization hermitian(FactorMatrix h);
  static CovParameterization hermitian_of_inverse(FactorMatrix h);

  int order() const;
};

// Default diagonal loading applied before any matrix inversion.
inline constexpr double kDiagonalLoading = 1e-7;

// Handle that applies the inverse of a resolved covariance to a vector.
// Direct and Hermitian payloads are loaded and factorized; inverse-form
// payloads are applied by multiplication and are never loaded, since
// nothing is inverted.
class ResolvedCov {
 public:
  int order() const;
  void apply_inverse(std::span<const cdouble> x, std::span<cdouble> y) const;
  std::vector<cdouble> apply_inverse(std::span<const cdouble> x) const;

 private:
  friend ResolvedCov resolve_cov(const CovParameterization&, double);
  std::variant<HermitianMatrix, HpdFactorization, FactorMatrix> impl_;
};

// Prepares a covariance payload for inversion. loading is the diagonal
// loading added to Direct and Hermitian payloads before factorization;
// pass 0 to disable it. Throws NotPositiveDefinite when factorization
// fails.
ResolvedCov resolve_cov(const CovParameterization& p,
                        double loading = kDiagonalLoading);

// Complex filter taps over the stacked frames of one bin.
struct FilterWeights {
  int order = 0;
  std::array<cdouble, kMaxOrder> w{};

  std::span<const cdouble> get() const {
    return {w.data(), static_cast<std::size_t>(order)};
  }
};

enum class WfScaling {
  Scaled,      // speech power times the solved column (minimum-MSE taps)
  StrictRaw,   // the solved column alone, without the speech-power scale
};

// Multi-frame Wiener taps from the resolved noisy covariance. With order
// one and Scaled mode this reduces to the classic real-valued gain
// phi_s / (phi_s + phi_noise).
FilterWeights wf_weights(const ResolvedCov& noisy_cov, const IfcVector& ifc,
                         double phi_s, WfScaling scaling = WfScaling::Scaled);

// Distortionless multi-frame taps: inv(cov) * ifc normalized by
// ifc^H * inv(cov) * ifc. The normalization makes w^H * ifc exactly one.
// Throws DegenerateDenominator when the normalizer vanishes.
FilterWeights mvdr_weights(const ResolvedCov& cov, const IfcVector& ifc);

// Externally estimated taps passed through unchanged.
FilterWeights df_weights(std::span<const cdouble> raw);

// y = w^H * x over the stacked frames of one bin.
cdouble apply_weights(const FilterWeights& w, std::span<const cdouble> x);

}  // namespace mfse
