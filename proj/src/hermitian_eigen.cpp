#include "catlab/linalg.hpp"

#include "catlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace catlab::linalg {

namespace {

HermitianEigen sorted(std::vector<double> values, const CMatrix& vectors) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  HermitianEigen out;
  out.vectors = CMatrix(vectors.rows(), vectors.cols());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    out.values.push_back(values[idx[j]]);
    for (std::size_t i = 0; i < vectors.rows(); ++i) out.vectors(i, j) = vectors(i, idx[j]);
  }
  return out;
}

// Implicit QL on a real symmetric tridiagonal matrix: diag d, off-diagonal
// e[i] between i and i+1 (e[n-1] unused). z accumulates the rotations.
void tql2(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z, std::size_t n) {
  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0, tst1 = 0;
  e[n - 1] = 0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n && std::abs(e[m]) > eps * tst1) ++m;
    if (m == n) m = n - 1;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 100) throw NumericError("tridiagonal QL failed to converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;
        p = d[m];
        double c = 1, c2 = 1, c3 = 1, s = 0, s2 = 0;
        const double el1 = e[l + 1];
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          for (std::size_t k = 0; k < n; ++k) {
            double* zk = &z[k * n];
            h = zk[ii + 1];
            zk[ii + 1] = s * zk[ii] + c * h;
            zk[ii] = c * zk[ii] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0;
  }
}

}  // namespace

HermitianEigen jacobi_eigen(const CMatrix& h) {
  const std::size_t n = h.rows();
  CMatrix a = h;
  CMatrix v = CMatrix::identity(n);
  double total = 0;
  for (const auto& x : a.data()) total += std::norm(x);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (off <= 1e-32 * total || off == 0) break;
    if (sweep == 99) throw NumericError("Jacobi eigensolver failed to converge");
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx b = a(p, q);
        const double r = std::abs(b);
        if (r == 0 || r * r <= 1e-36 * total) continue;
        const cplx e = b / r;
        const double ap = a(p, p).real(), aq = a(q, q).real();
        const double tau = (aq - ap) / (2 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        const double c = 1 / std::sqrt(1 + t * t), s = t * c;
        const cplx se = s * e, sec = s * std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sec * akq;
          a(k, q) = se * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - se * aqk;
          a(q, k) = sec * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sec * vkq;
          v(k, q) = se * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i).real();
  return sorted(std::move(values), v);
}

HermitianEigen householder_ql_eigen(const CMatrix& h) {
  const std::size_t n = h.rows();
  if (n == 0) return {};
  CMatrix a = h;
  CMatrix q = CMatrix::identity(n);
  std::vector<cplx> v(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // length of the column below the diagonal
    double alpha = 0;
    for (std::size_t i = 0; i < m; ++i) alpha += std::norm(a(k + 1 + i, k));
    alpha = std::sqrt(alpha);
    if (alpha == 0) continue;
    const cplx x0 = a(k + 1, k);
    const cplx phase = std::abs(x0) > 0 ? x0 / std::abs(x0) : cplx(1);
    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    v[0] += phase * alpha;
    double vn = 0;
    for (std::size_t i = 0; i < m; ++i) vn += std::norm(v[i]);
    vn = std::sqrt(vn);
    for (std::size_t i = 0; i < m; ++i) v[i] /= vn;
    // Column/row k collapse onto -phase * alpha.
    for (std::size_t i = 0; i < m; ++i) a(k + 1 + i, k) = a(k, k + 1 + i) = 0;
    a(k + 1, k) = -phase * alpha;
    a(k, k + 1) = std::conj(a(k + 1, k));
    // Trailing block B <- B - 2 v w^dagger - 2 w v^dagger, w = Bv - (v^dagger B v) v.
    for (std::size_t i = 0; i < m; ++i) {
      cplx acc = 0;
      for (std::size_t j = 0; j < m; ++j) acc += a(k + 1 + i, k + 1 + j) * v[j];
      p[i] = acc;
    }
    cplx kappa = 0;
    for (std::size_t i = 0; i < m; ++i) kappa += std::conj(v[i]) * p[i];
    for (std::size_t i = 0; i < m; ++i) p[i] -= kappa.real() * v[i];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        a(k + 1 + i, k + 1 + j) -= 2.0 * (v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]));
    // Q <- Q H
    for (std::size_t r = 0; r < n; ++r) {
      cplx acc = 0;
      for (std::size_t j = 0; j < m; ++j) acc += q(r, k + 1 + j) * v[j];
      for (std::size_t j = 0; j < m; ++j) q(r, k + 1 + j) -= 2.0 * acc * std::conj(v[j]);
    }
  }
  // Hermitian tridiagonal -> real symmetric tridiagonal by a diagonal phase change.
  std::vector<double> d(n), e(n, 0.0);
  std::vector<cplx> delta(n, cplx(1));
  for (std::size_t i = 0; i < n; ++i) d[i] = a(i, i).real();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const cplx sub = a(i + 1, i);
    const double mag = std::abs(sub);
    e[i] = mag;
    delta[i + 1] = mag > 0 ? delta[i] * (sub / mag) : delta[i];
  }
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1;
  tql2(d, e, z, n);
  // Eigenvectors: Q D Z.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) q(r, c) *= delta[c];
  CMatrix vecs(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t kk = 0; kk < n; ++kk) {
      const cplx qrk = q(r, kk);
      if (qrk == cplx(0)) continue;
      const double* zk = &z[kk * n];
      for (std::size_t c = 0; c < n; ++c) vecs(r, c) += qrk * zk[c];
    }
  return sorted(std::move(d), vecs);
}

HermitianEigen hermitian_eigen(const CMatrix& h) {
  return h.rows() <= 512 ? jacobi_eigen(h) : householder_ql_eigen(h);
}

}  // namespace catlab::linalg
