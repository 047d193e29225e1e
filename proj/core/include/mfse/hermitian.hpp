#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "mfse/errors.hpp"

namespace mfse {

using cdouble = std::complex<double>;

// Largest stacked-frame order the dense kernels are sized for.
inline constexpr int kMaxOrder = 16;

// Relative pivot tolerance for positive-definiteness checks, scaled by
// trace/order of the matrix being factorized.
inline constexpr double kPivotTolerance = 1e-14;

// Dense Hermitian matrix of runtime order <= kMaxOrder, stored row-major
// without heap allocation. The lower triangle is authoritative: every
// mutation writes the lower entry and mirrors its conjugate into the upper
// triangle, so reads always see a bit-exact Hermitian matrix with a real
// diagonal. Entry (i, j) holds E[x_i * conj(x_j)] when the matrix is used
// as a covariance.
class HermitianMatrix {
 public:
  HermitianMatrix() : HermitianMatrix(1) {}
  explicit HermitianMatrix(int order);

  static HermitianMatrix identity(int order, double scale = 1.0);

  int order() const { return order_; }
  cdouble operator()(int i, int j) const { return a_[i * order_ + j]; }
  double diag(int i) const { return a_[i * order_ + i].real(); }
  double trace() const;

  // Writes entry (i, j), i >= j, and mirrors conj(v) into (j, i).
  // Diagonal writes keep only the real part.
  void set_lower(int i, int j, cdouble v);

  std::span<const cdouble> data() const { return {a_.data(), size()}; }

 private:
  std::size_t size() const {
    return static_cast<std::size_t>(order_) * order_;
  }

  int order_;
  std::array<cdouble, kMaxOrder * kMaxOrder> a_{};
};

// General complex square matrix of runtime order <= kMaxOrder. Serves as
// the factor H of a Hermitian product H * H^H and as the payload of the
// factor-based covariance parameterizations.
class FactorMatrix {
 public:
  FactorMatrix() : FactorMatrix(1) {}
  explicit FactorMatrix(int order);

  static FactorMatrix identity(int order, double scale = 1.0);

  int order() const { return order_; }
  cdouble operator()(int i, int j) const { return a_[i * order_ + j]; }
  cdouble& at(int i, int j) { return a_[i * order_ + j]; }

  // y = H * x and y = H^H * x. Output spans must have length order().
  void multiply(std::span<const cdouble> x, std::span<cdouble> y) const;
  void multiply_adjoint(std::span<const cdouble> x,
                        std::span<cdouble> y) const;

 private:
  int order_;
  std::array<cdouble, kMaxOrder * kMaxOrder> a_{};
};

// H * H^H. The result is Hermitian positive semidefinite by construction.
HermitianMatrix hermitian_compose(const FactorMatrix& h);

// m + epsilon * I. epsilon must be >= 0.
HermitianMatrix diag_load(const HermitianMatrix& m, double epsilon);

// old_weight * cov + new_weight * x * x^H, the recursive covariance
// update. Both weights must lie in [0, 1]. Diagonal entries are
// accumulated as squared magnitudes, so they stay exactly real.
HermitianMatrix accumulate_outer(const HermitianMatrix& cov,
                                 std::span<const cdouble> x,
                                 double old_weight, double new_weight);

// cov + alpha * x * x^H with alpha of either sign. Used to add or remove
// a rank-one speech component from a covariance.
HermitianMatrix rank_one_update(const HermitianMatrix& cov,
                                std::span<const cdouble> x, double alpha);

HermitianMatrix add(const HermitianMatrix& a, const HermitianMatrix& b);

// Lower-triangular Cholesky factorization L * L^H = A of a Hermitian
// positive definite matrix. decompose() throws NotPositiveDefinite when
// any pivot falls at or below kPivotTolerance * trace(A) / order(A).
class HpdFactorization {
 public:
  static HpdFactorization decompose(const HermitianMatrix& a);

  int order() const { return order_; }

  // Solves A x = b in place.
  void solve_in_place(std::span<cdouble> b) const;
  std::vector<cdouble> solve(std::span<const cdouble> rhs) const;

  // U = L^{-H}, upper triangular, so that U * U^H = A^{-1}.
  FactorMatrix inverse_factor() const;

  // Explicit A^{-1}, assembled column by column from solves.
  HermitianMatrix inverse() const;

 private:
  HpdFactorization() : order_(0) {}

  int order_;
  std::array<cdouble, kMaxOrder * kMaxOrder> l_{};
};

// Factorize-and-solve convenience for A x = rhs.
std::vector<cdouble> solve_hpd(const HermitianMatrix& a,
                               std::span<const cdouble> rhs);

// Cholesky variant that tolerates positive semidefinite input: a pivot at
// or below tolerance produces a zero column instead of failing. Intended
// for building factor payloads from possibly rank-deficient covariance
// estimates; the composed product reproduces the PSD input.
FactorMatrix psd_factor(const HermitianMatrix& a);

}  // namespace mfse
