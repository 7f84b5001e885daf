#include "catlab/errors.hpp"
#include "catlab/quantization.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace catlab;
using namespace catlab::quant;

namespace {

cplx e(double x) { return std::polar(1.0, 2 * M_PI * x); }

StateVector random_state(Residue n, int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  StateVector v(n, d);
  for (auto& x : v.values) x = cplx(g(rng), g(rng));
  return v;
}

const symplectic::SymplecticMatrix kIdentity({{1, 0}, {0, 1}});

}  // namespace

TEST_CASE("index map is lexicographic") {
  CHECK(encode({1, 2}, 5) == 7);
  CHECK(decode(7, 5, 2) == std::vector<Residue>{1, 2});
  for (std::size_t i = 0; i < 125; ++i) CHECK(encode(decode(i, 5, 3), 5) == i);
}

TEST_CASE("apply_heisenberg on simple translations") {
  const StateVector phi = random_state(5, 1, 1);
  const StateVector same = apply_heisenberg({0, 0}, phi);
  for (std::size_t w = 0; w < 5; ++w) CHECK(std::abs(same.values[w] - phi.values[w]) == 0.0);
  const StateVector shifted = apply_heisenberg({1, 0}, phi);
  for (std::size_t w = 0; w < 5; ++w) CHECK(std::abs(shifted.values[w] - phi.values[(w + 1) % 5]) < 1e-15);
  const StateVector mod = apply_heisenberg({0, 1}, phi);
  for (std::size_t w = 0; w < 5; ++w) CHECK(std::abs(mod.values[w] - e(w / 5.0) * phi.values[w]) < 1e-14);
}

TEST_CASE("heisenberg_matrix small cases") {
  const CMatrix shift = heisenberg_matrix({1, 0}, 3, 1);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(shift(i, j) - (j == (i + 1) % 3 ? 1.0 : 0.0)) < 1e-15);
  const CMatrix diag = heisenberg_matrix({0, 1}, 3, 1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(diag(i, i) - e(i / 3.0)) < 1e-15);
}

TEST_CASE("composition law T(u)T(v) = e_{2N}(omega(u, v)) T(u + v)") {
  const CMatrix lhs = heisenberg_matrix({1, 0}, 5, 1) * heisenberg_matrix({0, 1}, 5, 1);
  CMatrix rhs = heisenberg_matrix({1, 1}, 5, 1);
  rhs *= e(1.0 / 10);
  CHECK(omega({1, 0}, {0, 1}) == 1);
  CHECK(max_abs(lhs - rhs) < 1e-12);
}

TEST_CASE("composition law at d = 2 on random integer vectors") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::int64_t> c(-6, 6);
  const Residue n = 3;
  for (int trial = 0; trial < 50; ++trial) {
    HeisenbergIndex u(4), v(4), w(4);
    for (int i = 0; i < 4; ++i) {
      u[i] = c(rng);
      v[i] = c(rng);
      w[i] = u[i] + v[i];
    }
    CMatrix rhs = heisenberg_matrix(w, n, 2);
    rhs *= e(static_cast<double>(omega(u, v)) / (2.0 * n));
    CHECK(max_abs(heisenberg_matrix(u, n, 2) * heisenberg_matrix(v, n, 2) - rhs) < 1e-12);
  }
}

TEST_CASE("T(u)^dagger = T(-u) and the representative matters") {
  const CMatrix t = heisenberg_matrix({2, 3}, 5, 1);
  CHECK(max_abs(adjoint(t) - heisenberg_matrix({-2, -3}, 5, 1)) < 1e-14);
  // T(u + N v) = (-1)^{omega(u, v) + v1 v2} T(u)
  CMatrix flipped = heisenberg_matrix({7, 3}, 5, 1);
  flipped *= -1.0;
  CHECK(max_abs(flipped - t) < 1e-14);
}

TEST_CASE("apply_heisenberg agrees with the dense matrix and preserves norm") {
  for (int d : {1, 2}) {
    const Residue n = d == 1 ? 7 : 5;
    const StateVector phi = random_state(n, d, 8 + d);
    const HeisenbergIndex u = d == 1 ? HeisenbergIndex{3, -2} : HeisenbergIndex{1, 4, -3, 2};
    const StateVector a = apply_heisenberg(u, phi);
    const auto b = linalg::apply(heisenberg_matrix(u, n, d), phi.values);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(a.values[i] - b[i]) < 1e-12);
    CHECK(norm(a) == doctest::Approx(norm(phi)));
  }
}

TEST_CASE("inner product normalization") {
  StateVector ones(5, 1, std::vector<cplx>(5, 1.0));
  CHECK(norm(ones) == doctest::Approx(1.0));
  CHECK(inner(ones, ones) == cplx(1.0, 0.0));
  CHECK_THROWS_AS(StateVector(5, 1, std::vector<cplx>(4)), InputError);
  CHECK_THROWS_AS(apply_heisenberg({1, 0, 0}, ones), InputError);
}

TEST_CASE("observables") {
  Observable c(1, {{{0, 0}, 0.75}});
  CHECK(max_abs(observable_operator(c, 5) - [] {
          CMatrix m = CMatrix::identity(5);
          m *= 0.75;
          return m;
        }()) < 1e-15);
  Observable f(1, {{{1, 0}, 0.5}, {{-1, 0}, 0.5}}, "cos");
  const CMatrix op = observable_operator(f, 5);
  CHECK(hermiticity_residual(op) < 1e-15);
  CMatrix expect = heisenberg_matrix({1, 0}, 5, 1) + heisenberg_matrix({-1, 0}, 5, 1);
  expect *= 0.5;
  CHECK(max_abs(op - expect) < 1e-15);
  const auto eig = linalg::jacobi_eigen(op);
  CHECK(std::max(std::abs(eig.values.front()), std::abs(eig.values.back())) <= 1.0 + 1e-12);
  CHECK(f.mean() == 0.0);
  CHECK(f.nonconstant_l1() == doctest::Approx(1.0));
  CHECK_THROWS_WITH_AS(Observable(1, {{{1, 0}, 0.5}}), "observable not real-valued", InputError);
  CHECK_THROWS_AS(Observable(1, {{{1, 0}, 0.5}, {{-1, 0}, 0.4}}), InputError);
  const Observable sym = Observable::symmetrized(1, {{{1, 2}, cplx(0.1, 0.2)}});
  CHECK(sym.terms().at({-1, -2}) == cplx(0.1, -0.2));
}

TEST_CASE("dense budget") {
  CHECK_THROWS_AS(heisenberg_matrix({1, 0}, 4099, 1), NumericError);
  CHECK_NOTHROW(apply_heisenberg({1, 0}, StateVector(4099, 1)));
}

TEST_CASE("propagator of the identity map is the identity") {
  const Propagator u = build_propagator(kIdentity, arith::PrimePowerModulus(5, 1));
  CHECK(max_abs(u.matrix - CMatrix::identity(5)) == 0.0);
  CHECK(egorov_residual(u, kIdentity, 10, 0) == 0.0);
}

TEST_CASE("propagator satisfies exact Egorov") {
  const auto a2 = symplectic::fixture_a2();
  const Propagator u5 = build_propagator(a2, arith::PrimePowerModulus(5, 1));
  CHECK(u5.dim() == 5);
  CHECK(unitarity_residual(u5.matrix) < 1e-12);
  CHECK(egorov_residual(u5, a2, 50, 0) < 1e-12);
  const Propagator u25 = build_propagator(a2, arith::PrimePowerModulus(5, 2));
  CHECK(egorov_residual(u25, a2, 100, 0) < 1e-10);
  const auto sp = power_scalar(u25, 20);
  CHECK(sp.deviation < 1e-9);
  CHECK(std::abs(sp.scalar) == doctest::Approx(1.0));
}

TEST_CASE("phase convention: first nonzero entry of row 0 is positive real") {
  const Propagator u = build_propagator(symplectic::fixture_a2(), arith::PrimePowerModulus(5, 2));
  std::size_t j = 0;
  while (std::abs(u.matrix(0, j)) == 0) ++j;
  CHECK(std::abs(u.matrix(0, j).imag()) < 1e-15);
  CHECK(u.matrix(0, j).real() > 0);
  REQUIRE(u.phase_exponents.has_value());
  CHECK((*u.phase_exponents)[j] == 0);
}

TEST_CASE("propagator for d = 2") {
  const auto d2 = symplectic::fixture_d2();
  for (Residue p : {5u, 7u}) {
    const Propagator u = build_propagator(d2, arith::PrimePowerModulus(p, 1));
    CHECK(u.dim() == p * p);
    CHECK(egorov_residual(u, d2, 20, 1) < 1e-10);
  }
}

TEST_CASE("corrupted propagator is detected") {
  const auto a2 = symplectic::fixture_a2();
  Propagator u = build_propagator(a2, arith::PrimePowerModulus(5, 1));
  for (std::size_t i = 0; i < u.dim(); ++i) std::swap(u.matrix(i, 0), u.matrix(i, 1));
  CHECK(egorov_residual(u, a2, 100, 0) >= 0.1);
}

TEST_CASE("propagator preconditions") {
  CHECK_THROWS_WITH_AS(build_propagator(symplectic::fixture_a2(), arith::PrimePowerModulus(2, 2)),
                       "modulus must be an odd prime power", InputError);
  CHECK_THROWS_AS(build_propagator(symplectic::SymplecticMatrix({{0, 1}, {-1, 0}}), arith::PrimePowerModulus(5, 1)),
                  InputError);
  CHECK_THROWS_AS(build_propagator(symplectic::SymplecticMatrix({{1, 1}, {0, 2}}), arith::PrimePowerModulus(5, 1)),
                  InputError);
}
