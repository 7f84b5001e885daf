#include "catlab/linalg.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace catlab::linalg;

namespace {

CMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = g(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = cplx(g(rng), g(rng));
      h(j, i) = std::conj(h(i, j));
    }
  }
  return h;
}

double eigen_residual(const CMatrix& h, const HermitianEigen& e) {
  CMatrix lam(h.rows(), h.rows());
  for (std::size_t i = 0; i < h.rows(); ++i) lam(i, i) = e.values[i];
  return max_abs(h * e.vectors - e.vectors * lam);
}

}  // namespace

TEST_CASE("small known spectra") {
  CMatrix h(2, 2);
  h(0, 0) = 2;
  h(1, 1) = 2;
  h(0, 1) = 1;
  h(1, 0) = 1;
  for (auto solver : {jacobi_eigen, householder_ql_eigen}) {
    const auto e = solver(h);
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(3.0));
  }
  const auto id = jacobi_eigen(CMatrix::identity(4));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("Jacobi and Householder-QL agree on random Hermitian matrices") {
  for (std::size_t n : {1u, 2u, 3u, 10u, 40u, 90u}) {
    const CMatrix h = random_hermitian(n, n);
    const auto a = jacobi_eigen(h);
    const auto b = householder_ql_eigen(h);
    for (std::size_t i = 0; i < n; ++i) CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-10));
    CHECK(eigen_residual(h, a) < 1e-10);
    CHECK(eigen_residual(h, b) < 1e-10);
    CHECK(unitarity_residual(a.vectors) < 1e-12);
    CHECK(unitarity_residual(b.vectors) < 1e-12);
    for (std::size_t i = 1; i < n; ++i) CHECK(a.values[i - 1] <= a.values[i]);
  }
}

TEST_CASE("degenerate spectra keep orthonormal eigenvectors") {
  // diag(1, 1, 2, 2, 2) in a random unitary basis.
  const std::size_t n = 5;
  const auto q = jacobi_eigen(random_hermitian(n, 99)).vectors;
  CMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = i < 2 ? 1.0 : 2.0;
  const CMatrix h = q * d * adjoint(q);
  for (auto solver : {jacobi_eigen, householder_ql_eigen}) {
    const auto e = solver(h);
    CHECK(eigen_residual(h, e) < 1e-10);
    CHECK(unitarity_residual(e.vectors) < 1e-12);
  }
}

TEST_CASE("matrix helpers") {
  CMatrix a(2, 3);
  a(0, 1) = cplx(1, 2);
  a(1, 2) = 3;
  const CMatrix at = adjoint(a);
  CHECK(at.rows() == 3);
  CHECK(at(1, 0) == cplx(1, -2));
  CHECK(frobenius_norm(a) == doctest::Approx(std::sqrt(14.0)));
  CHECK(max_abs(a) == doctest::Approx(3.0));
  CHECK(hermiticity_residual(random_hermitian(6, 1)) == 0.0);
  CHECK(unitarity_residual(CMatrix::identity(3)) == 0.0);
  const std::vector<cplx> x{cplx(0, 1), 2.0};
  CHECK(dot(x, x) == cplx(5, 0));
  CHECK(norm2(x) == doctest::Approx(std::sqrt(5.0)));
  CHECK(apply(CMatrix::identity(2), x) == x);
}

TEST_CASE("numerical radius") {
  CMatrix nil(2, 2);
  nil(0, 1) = 1;
  CHECK(numerical_radius(nil) == doctest::Approx(0.5).epsilon(1e-9));
  CMatrix scalar(1, 1);
  scalar(0, 0) = cplx(0, -0.3);
  CHECK(numerical_radius(scalar) == doctest::Approx(0.3));
  // Normal matrix: numerical radius equals spectral radius.
  CMatrix diag(3, 3);
  diag(0, 0) = cplx(0.2, 0.1);
  diag(1, 1) = cplx(-0.7, 0.0);
  diag(2, 2) = cplx(0.0, 0.5);
  CHECK(numerical_radius(diag) == doctest::Approx(0.7).epsilon(1e-9));
}
