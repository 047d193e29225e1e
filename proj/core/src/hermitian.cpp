#include "mfse/hermitian.hpp"

#include <cmath>

namespace mfse {

namespace {

void check_order(int order) {
  if (order < 1 || order > kMaxOrder) {
    throw ConfigInvalid("matrix order must be in [1, " +
                        std::to_string(kMaxOrder) + "], got " +
                        std::to_string(order));
  }
}

void check_vector(int order, std::size_t n) {
  if (n != static_cast<std::size_t>(order)) {
    throw OrderMismatch("vector length " + std::to_string(n) +
                        " does not match matrix order " +
                        std::to_string(order));
  }
}

}  // namespace

HermitianMatrix::HermitianMatrix(int order) : order_(order) {
  check_order(order);
}

HermitianMatrix HermitianMatrix::identity(int order, double scale) {
  HermitianMatrix m(order);
  for (int i = 0; i < order; ++i) m.set_lower(i, i, scale);
  return m;
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < order_; ++i) t += diag(i);
  return t;
}

void HermitianMatrix::set_lower(int i, int j, cdouble v) {
  if (i == j) {
    a_[i * order_ + i] = cdouble(v.real(), 0.0);
    return;
  }
  a_[i * order_ + j] = v;
  a_[j * order_ + i] = std::conj(v);
}

FactorMatrix::FactorMatrix(int order) : order_(order) { check_order(order); }

FactorMatrix FactorMatrix::identity(int order, double scale) {
  FactorMatrix m(order);
  for (int i = 0; i < order; ++i) m.at(i, i) = scale;
  return m;
}

void FactorMatrix::multiply(std::span<const cdouble> x,
                            std::span<cdouble> y) const {
  check_vector(order_, x.size());
  check_vector(order_, y.size());
  for (int i = 0; i < order_; ++i) {
    cdouble acc = 0.0;
    for (int j = 0; j < order_; ++j) acc += a_[i * order_ + j] * x[j];
    y[i] = acc;
  }
}

void FactorMatrix::multiply_adjoint(std::span<const cdouble> x,
                                    std::span<cdouble> y) const {
  check_vector(order_, x.size());
  check_vector(order_, y.size());
  for (int j = 0; j < order_; ++j) y[j] = 0.0;
  for (int i = 0; i < order_; ++i) {
    for (int j = 0; j < order_; ++j) {
      y[j] += std::conj(a_[i * order_ + j]) * x[i];
    }
  }
}

HermitianMatrix hermitian_compose(const FactorMatrix& h) {
  const int n = h.order();
  HermitianMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (i == j) {
        double acc = 0.0;
        for (int k = 0; k < n; ++k) acc += std::norm(h(i, k));
        m.set_lower(i, i, acc);
      } else {
        cdouble acc = 0.0;
        for (int k = 0; k < n; ++k) acc += h(i, k) * std::conj(h(j, k));
        m.set_lower(i, j, acc);
      }
    }
  }
  return m;
}

HermitianMatrix diag_load(const HermitianMatrix& m, double epsilon) {
  if (epsilon < 0.0) {
    throw ConfigInvalid("diagonal loading must be >= 0");
  }
  HermitianMatrix out = m;
  for (int i = 0; i < m.order(); ++i) {
    out.set_lower(i, i, m.diag(i) + epsilon);
  }
  return out;
}

HermitianMatrix accumulate_outer(const HermitianMatrix& cov,
                                 std::span<const cdouble> x,
                                 double old_weight, double new_weight) {
  if (old_weight < 0.0 || old_weight > 1.0 || new_weight < 0.0 ||
      new_weight > 1.0) {
    throw ConfigInvalid("accumulation weights must lie in [0, 1]");
  }
  const int n = cov.order();
  check_vector(n, x.size());
  HermitianMatrix out(n);
  for (int i = 0; i < n; ++i) {
    out.set_lower(i, i, old_weight * cov.diag(i) + new_weight * std::norm(x[i]));
    for (int j = 0; j < i; ++j) {
      out.set_lower(i, j,
                    old_weight * cov(i, j) + new_weight * x[i] * std::conj(x[j]));
    }
  }
  return out;
}

HermitianMatrix rank_one_update(const HermitianMatrix& cov,
                                std::span<const cdouble> x, double alpha) {
  const int n = cov.order();
  check_vector(n, x.size());
  HermitianMatrix out(n);
  for (int i = 0; i < n; ++i) {
    out.set_lower(i, i, cov.diag(i) + alpha * std::norm(x[i]));
    for (int j = 0; j < i; ++j) {
      out.set_lower(i, j, cov(i, j) + alpha * x[i] * std::conj(x[j]));
    }
  }
  return out;
}

HermitianMatrix add(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.order() != b.order()) {
    throw OrderMismatch("cannot add matrices of orders " +
                        std::to_string(a.order()) + " and " +
                        std::to_string(b.order()));
  }
  HermitianMatrix out(a.order());
  for (int i = 0; i < a.order(); ++i) {
    for (int j = 0; j <= i; ++j) {
      out.set_lower(i, j, a(i, j) + b(i, j));
    }
  }
  return out;
}

HpdFactorization HpdFactorization::decompose(const HermitianMatrix& a) {
  const int n = a.order();
  const double tol = kPivotTolerance * a.trace() / n;

  HpdFactorization f;
  f.order_ = n;
  auto& l = f.l_;
  for (int j = 0; j < n; ++j) {
    double pivot = a.diag(j);
    for (int k = 0; k < j; ++k) pivot -= std::norm(l[j * n + k]);
    if (!(pivot > tol)) {
      throw NotPositiveDefinite("pivot " + std::to_string(pivot) +
                                " at column " + std::to_string(j) +
                                " is not above tolerance " +
                                std::to_string(tol));
    }
    const double ljj = std::sqrt(pivot);
    l[j * n + j] = ljj;
    for (int i = j + 1; i < n; ++i) {
      cdouble acc = a(i, j);
      for (int k = 0; k < j; ++k) {
        acc -= l[i * n + k] * std::conj(l[j * n + k]);
      }
      l[i * n + j] = acc / ljj;
    }
  }
  return f;
}

void HpdFactorization::solve_in_place(std::span<cdouble> b) const {
  const int n = order_;
  check_vector(n, b.size());
  // Forward: L y = b.
  for (int i = 0; i < n; ++i) {
    cdouble acc = b[i];
    for (int k = 0; k < i; ++k) acc -= l_[i * n + k] * b[k];
    b[i] = acc / l_[i * n + i].real();
  }
  // Backward: L^H x = y.
  for (int i = n - 1; i >= 0; --i) {
    cdouble acc = b[i];
    for (int k = i + 1; k < n; ++k) acc -= std::conj(l_[k * n + i]) * b[k];
    b[i] = acc / l_[i * n + i].real();
  }
}

std::vector<cdouble> HpdFactorization::solve(
    std::span<const cdouble> rhs) const {
  std::vector<cdouble> x(rhs.begin(), rhs.end());
  solve_in_place(x);
  return x;
}

FactorMatrix HpdFactorization::inverse_factor() const {
  const int n = order_;
  // M = L^{-1}, lower triangular by forward substitution.
  std::array<cdouble, kMaxOrder * kMaxOrder> m{};
  for (int j = 0; j < n; ++j) {
    m[j * n + j] = 1.0 / l_[j * n + j].real();
    for (int i = j + 1; i < n; ++i) {
      cdouble acc = 0.0;
      for (int k = j; k < i; ++k) acc += l_[i * n + k] * m[k * n + j];
      m[i * n + j] = -acc / l_[i * n + i].real();
    }
  }
  // U = M^H, upper triangular, with U U^H = (L L^H)^{-1}.
  FactorMatrix u(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      u.at(i, j) = std::conj(m[j * n + i]);
    }
  }
  return u;
}

HermitianMatrix HpdFactorization::inverse() const {
  const int n = order_;
  HermitianMatrix out(n);
  std::vector<cdouble> col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = (i == j) ? 1.0 : 0.0;
    solve_in_place(col);
    for (int i = j; i < n; ++i) out.set_lower(i, j, col[i]);
  }
  return out;
}

std::vector<cdouble> solve_hpd(const HermitianMatrix& a,
                               std::span<const cdouble> rhs) {
  return HpdFactorization::decompose(a).solve(rhs);
}

FactorMatrix psd_factor(const HermitianMatrix& a) {
  const int n = a.order();
  const double tol = kPivotTolerance * a.trace() / n;

  FactorMatrix l(n);
  for (int j = 0; j < n; ++j) {
    double pivot = a.diag(j);
    for (int k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
    if (!(pivot > tol)) {
      // Semidefinite direction: zero column, nothing to divide by.
      continue;
    }
    const double ljj = std::sqrt(pivot);
    l.at(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      cdouble acc = a(i, j);
      for (int k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
      l.at(i, j) = acc / ljj;
    }
  }
  return l;
}

}  // namespace mfse
