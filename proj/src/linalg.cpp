#include "catlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace catlab::linalg {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<cplx> CMatrix::column(std::size_t j) const {
  std::vector<cplx> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void CMatrix::set_column(std::size_t j, const std::vector<cplx>& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

CMatrix& CMatrix::operator+=(const CMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  CMatrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* ci = &c(i, 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0)) continue;
      const cplx* bk = &b(k, 0);
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }

CMatrix adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

std::vector<cplx> apply(const CMatrix& a, const std::vector<cplx>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  std::vector<cplx> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0;
  for (const auto& v : a.data()) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
  double m = 0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double unitarity_residual(const CMatrix& a) {
  CMatrix g = a * adjoint(a);
  g -= CMatrix::identity(a.rows());
  return max_abs(g);
}

double hermiticity_residual(const CMatrix& a) {
  double m = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

cplx dot(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  cplx acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm2(const std::vector<cplx>& x) { return std::sqrt(std::real(dot(x, x))); }

double numerical_radius(const CMatrix& b) {
  const std::size_t m = b.rows();
  if (m == 0) return 0.0;
  if (m == 1) return std::abs(b(0, 0));
  const CMatrix bh = adjoint(b);
  auto top = [&](double theta) {
    const cplx ph = std::polar(1.0, theta);
    CMatrix h(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) h(i, j) = 0.5 * (ph * b(i, j) + std::conj(ph) * bh(i, j));
    return jacobi_eigen(h).values.back();
  };
  const int grid = 360;
  const double step = 2 * M_PI / grid;
  int best = 0;
  double best_val = top(0.0);
  for (int j = 1; j < grid; ++j) {
    double v = top(j * step);
    if (v > best_val) {
      best_val = v;
      best = j;
    }
  }
  // Golden-section refinement around the best grid point.
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double lo = (best - 1) * step, hi = (best + 1) * step;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = top(x1), f2 = top(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = top(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = top(x1);
    }
  }
  return std::max({best_val, f1, f2});
}

}  // namespace catlab::linalg
