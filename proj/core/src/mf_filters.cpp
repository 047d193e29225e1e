#include "mfse/mf_filters.hpp"

#include <cmath>

namespace mfse {

namespace {

constexpr double kDenominatorTolerance = 1e-30;

}  // namespace

const char* to_string(FilterKind k) {
  switch (k) {
    case FilterKind::DeepFilter: return "df";
    case FilterKind::Wiener: return "wf";
    case FilterKind::MvdrNoisy: return "mvdr-noisy";
    case FilterKind::MvdrNoise: return "mvdr";
  }
  return "?";
}

const char* to_string(CovKind k) {
  switch (k) {
    case CovKind::Direct: return "direct";
    case CovKind::Inverse: return "inverse";
    case CovKind::Hermitian: return "hermitian";
    case CovKind::HermitianOfInverse: return "hermitian_inverse";
  }
  return "?";
}

FilterKind filter_kind_from_string(const std::string& s) {
  if (s == "df") return FilterKind::DeepFilter;
  if (s == "wf") return FilterKind::Wiener;
  if (s == "mvdr-noisy") return FilterKind::MvdrNoisy;
  if (s == "mvdr") return FilterKind::MvdrNoise;
  throw ConfigInvalid("unknown filter kind '" + s +
                      "' (expected df, wf, mvdr, mvdr-noisy)");
}

CovKind cov_kind_from_string(const std::string& s) {
  if (s == "direct") return CovKind::Direct;
  if (s == "inverse") return CovKind::Inverse;
  if (s == "hermitian") return CovKind::Hermitian;
  if (s == "hermitian_inverse") return CovKind::HermitianOfInverse;
  throw ConfigInvalid(
      "unknown covariance parameterization '" + s +
      "' (expected direct, inverse, hermitian, hermitian_inverse)");
}

CovParameterization CovParameterization::direct(HermitianMatrix m) {
  return {CovKind::Direct, std::move(m)};
}

CovParameterization CovParameterization::inverse(HermitianMatrix m) {
  return {CovKind::Inverse, std::move(m)};
}

CovParameterization CovParameterization::hermitian(FactorMatrix h) {
  return {CovKind::Hermitian, std::move(h)};
}

CovParameterization CovParameterization::hermitian_of_inverse(FactorMatrix h) {
  return {CovKind::HermitianOfInverse, std::move(h)};
}

int CovParameterization::order() const {
  if (const auto* m = std::get_if<HermitianMatrix>(&payload)) {
    return m->order();
  }
  return std::get<FactorMatrix>(payload).order();
}

int ResolvedCov::order() const {
  if (const auto* f = std::get_if<HpdFactorization>(&impl_)) return f->order();
  if (const auto* m = std::get_if<HermitianMatrix>(&impl_)) return m->order();
  return std::get<FactorMatrix>(impl_).order();
}

void ResolvedCov::apply_inverse(std::span<const cdouble> x,
                                std::span<cdouble> y) const {
  const int n = order();
  if (x.size() != static_cast<std::size_t>(n) ||
      y.size() != static_cast<std::size_t>(n)) {
    throw OrderMismatch("vector length does not match resolved order " +
                        std::to_string(n));
  }
  if (const auto* f = std::get_if<HpdFactorization>(&impl_)) {
    std::copy(x.begin(), x.end(), y.begin());
    f->solve_in_place(y);
    return;
  }
  if (const auto* m = std::get_if<HermitianMatrix>(&impl_)) {
    for (int i = 0; i < n; ++i) {
      cdouble acc = 0.0;
      for (int j = 0; j < n; ++j) acc += (*m)(i, j) * x[j];
      y[i] = acc;
    }
    return;
  }
  // Inverse given as a factor: apply H * (H^H * x) without composing.
  const auto& h = std::get<FactorMatrix>(impl_);
  std::array<cdouble, kMaxOrder> tmp;
  std::span<cdouble> t(tmp.data(), static_cast<std::size_t>(n));
  h.multiply_adjoint(x, t);
  h.multiply(t, y);
}

std::vector<cdouble> ResolvedCov::apply_inverse(
    std::span<const cdouble> x) const {
  std::vector<cdouble> y(order());
  apply_inverse(x, y);
  return y;
}

ResolvedCov resolve_cov(const CovParameterization& p, double loading) {
  ResolvedCov out;
  switch (p.kind) {
    case CovKind::Direct: {
      const auto& m = std::get<HermitianMatrix>(p.payload);
      out.impl_ = HpdFactorization::decompose(
          loading > 0.0 ? diag_load(m, loading) : m);
      return out;
    }
    case CovKind::Hermitian: {
      const auto composed =
          hermitian_compose(std::get<FactorMatrix>(p.payload));
      out.impl_ = HpdFactorization::decompose(
          loading > 0.0 ? diag_load(composed, loading) : composed);
      return out;
    }
    case CovKind::Inverse:
      out.impl_ = std::get<HermitianMatrix>(p.payload);
      return out;
    case CovKind::HermitianOfInverse:
      out.impl_ = std::get<FactorMatrix>(p.payload);
      return out;
  }
  throw ConfigInvalid("unhandled covariance parameterization");
}

FilterWeights wf_weights(const ResolvedCov& noisy_cov, const IfcVector& ifc,
                         double phi_s, WfScaling scaling) {
  const int n = noisy_cov.order();
  if (ifc.order != n) {
    throw OrderMismatch("correlation vector order does not match covariance");
  }
  if (phi_s < 0.0) {
    throw ConfigInvalid("speech power must be >= 0");
  }
  FilterWeights out;
  out.order = n;
  std::span<cdouble> w(out.w.data(), static_cast<std::size_t>(n));
  noisy_cov.apply_inverse(ifc.get(), w);
  if (scaling == WfScaling::Scaled) {
    for (int i = 0; i < n; ++i) out.w[i] *= phi_s;
  }
  return out;
}

FilterWeights mvdr_weights(const ResolvedCov& cov, const IfcVector& ifc) {
  const int n = cov.order();
  if (ifc.order != n) {
    throw OrderMismatch("correlation vector order does not match covariance");
  }
  FilterWeights out;
  out.order = n;
  std::span<cdouble> v(out.w.data(), static_cast<std::size_t>(n));
  cov.apply_inverse(ifc.get(), v);

  cdouble denom = 0.0;
  for (int i = 0; i < n; ++i) denom += std::conj(ifc.v[i]) * v[i];
  if (std::abs(denom) <= kDenominatorTolerance) {
    throw DegenerateDenominator("distortionless normalizer vanished");
  }
  for (int i = 0; i < n; ++i) v[i] /= denom;
  return out;
}

FilterWeights df_weights(std::span<const cdouble> raw) {
  if (raw.empty() || raw.size() > static_cast<std::size_t>(kMaxOrder)) {
    throw OrderMismatch("tap count must lie in [1, " +
                        std::to_string(kMaxOrder) + "]");
  }
  FilterWeights out;
  out.order = static_cast<int>(raw.size());
  std::copy(raw.begin(), raw.end(), out.w.begin());
  return out;
}

cdouble apply_weights(const FilterWeights& w, std::span<const cdouble> x) {
  if (x.size() != static_cast<std::size_t>(w.order)) {
    throw OrderMismatch("stacked vector length " + std::to_string(x.size()) +
                        " does not match tap count " +
                        std::to_string(w.order));
  }
  cdouble acc = 0.0;
  for (int i = 0; i < w.order; ++i) acc += std::conj(w.w[i]) * x[i];
  return acc;
}

}  // namespace mfse
