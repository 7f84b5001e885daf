#include "catlab/quantization.hpp"
#include "catlab/verify.hpp"

#include <doctest.h>

#include <random>

using namespace catlab;
using arith::Residue;

TEST_CASE("random Heisenberg pairs satisfy the composition law") {
  std::mt19937_64 rng(11);
  for (unsigned k : {1u, 2u}) {
    const Residue n = arith::checked_pow(5, k);
    std::uniform_int_distribution<std::int64_t> coord(-60, 60);
    for (int trial = 0; trial < 40; ++trial) {
      const quant::HeisenbergIndex u{coord(rng), coord(rng)}, v{coord(rng), coord(rng)};
      const quant::HeisenbergIndex w{u[0] + v[0], u[1] + v[1]};
      auto lhs = quant::heisenberg_matrix(u, n, 1) * quant::heisenberg_matrix(v, n, 1);
      auto rhs = quant::heisenberg_matrix(w, n, 1);
      const auto e = arith::reduce(quant::omega(u, v), 2 * n);
      rhs *= std::polar(1.0, M_PI * static_cast<double>(e) / static_cast<double>(n));
      CHECK(linalg::max_abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("random states: T(u) is an isometry and apply matches the matrix") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<linalg::cplx> vals(25);
    for (auto& x : vals) x = {g(rng), g(rng)};
    quant::StateVector phi(5, 2, vals);
    const quant::HeisenbergIndex u{static_cast<std::int64_t>(rng() % 10), static_cast<std::int64_t>(rng() % 10),
                                   static_cast<std::int64_t>(rng() % 10), static_cast<std::int64_t>(rng() % 10)};
    const auto out = quant::apply_heisenberg(u, phi);
    CHECK(quant::norm(out) == doctest::Approx(quant::norm(phi)));
    const auto dense = linalg::apply(quant::heisenberg_matrix(u, 5, 2), phi.values);
    for (std::size_t i = 0; i < dense.size(); ++i) CHECK(std::abs(dense[i] - out.values[i]) < 1e-12);
  }
}

TEST_CASE("random coefficient vectors: periods divide the lcm and sums stay within the trivial bound") {
  const auto sd = verify::spectral_data(symplectic::fixture_a2(), 5, 3);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const unsigned r = 1 + rng() % 3;
    const std::vector<std::int64_t> a{static_cast<std::int64_t>(rng() % 125) - 62,
                                      static_cast<std::int64_t>(rng() % 125) - 62};
    const auto t = verify::sequence_period(sd, a, r);
    const std::uint64_t full = 4 * arith::checked_pow(5, r - 1);
    CHECK(full % t == 0);
    const auto rec = verify::exp_sum(sd, a, r, t);
    CHECK(std::abs(rec.value) <= static_cast<double>(t) + 1e-9);
  }
}

TEST_CASE("random u: counts dominate the diagonal and agree across methods") {
  std::mt19937_64 rng(8);
  const auto a = symplectic::fixture_a2();
  const arith::PrimePowerModulus ctx(5, 2);
  for (int trial = 0; trial < 10; ++trial) {
    quant::HeisenbergIndex u{static_cast<std::int64_t>(rng() % 25), static_cast<std::int64_t>(rng() % 25)};
    if (u[0] % 25 == 0 && u[1] % 25 == 0) u[0] = 1;
    const auto fast = verify::count_Q(a, ctx, u, 1);
    CHECK(fast.count == verify::count_Q(a, ctx, u, 1, verify::CountMethod::naive).count);
    CHECK(fast.count >= fast.T);
  }
}
