#include "catlab/errors.hpp"
#include "catlab/verify.hpp"

#include <doctest.h>

#include <cmath>

using namespace catlab;
using namespace catlab::verify;

namespace {

const symplectic::SymplecticMatrix kA2 = symplectic::fixture_a2();

}  // namespace

TEST_CASE("spectral data for A2 at p = 5") {
  const auto sd = spectral_data(kA2, 5, 2);
  CHECK(sd.lambda == std::vector<Residue>{12, 23});
  CHECK(sd.orders == std::vector<std::uint64_t>{20, 20});
  CHECK(sd.gammas == std::vector<unsigned>{1, 1});
  CHECK(sd.ratio_gammas[0][1] == 1);
  CHECK(sd.ratio_gammas[1][0] == 1);
  CHECK(sd.gamma_max == 1);
  CHECK_THROWS_AS(spectral_data(kA2, 7, 1), InputError);
}

TEST_CASE("Q_s counts") {
  const arith::PrimePowerModulus n5(5, 1), n25(5, 2);
  CHECK(count_Q(kA2, n5, {1, 0}, 1).count == 4);
  CHECK(count_Q(kA2, n5, {1, 0}, 2).count == 36);
  CHECK(count_Q(kA2, n25, {1, 0}, 1).count == 20);
  CHECK(count_Q(kA2, n25, {1, 0}, 2).count == 2100);
  CHECK_THROWS_AS(count_Q(kA2, n5, {0, 0}, 1), InputError);
  CHECK_THROWS_AS(count_Q(kA2, n5, {5, 10}, 1), InputError);
  CHECK_THROWS_WITH_AS(count_Q(kA2, arith::PrimePowerModulus(5, 4), {1, 0}, 4), "instance too large", NumericError);
}

TEST_CASE("meet-in-the-middle agrees with the naive oracle") {
  for (unsigned k = 1; k <= 2; ++k)
    for (unsigned s = 1; s <= 2; ++s)
      for (const quant::HeisenbergIndex& u : {quant::HeisenbergIndex{1, 0}, {0, 1}, {2, 3}, {5, 5}}) {
        const arith::PrimePowerModulus ctx(5, k);
        if (k == 1 && u == quant::HeisenbergIndex{5, 5}) continue;
        const auto fast = count_Q(kA2, ctx, u, s);
        const auto slow = count_Q(kA2, ctx, u, s, CountMethod::naive);
        CHECK(fast.count == slow.count);
        CHECK(fast.count >= fast.T);  // diagonal solutions
      }
  const auto sd = spectral_data(kA2, 5, 2);
  CHECK(count_lambda_system(sd, 2, 2, 20) == count_lambda_system(sd, 2, 2, 20, CountMethod::naive));
}

TEST_CASE("eigenvalue system counts") {
  const auto sd = spectral_data(kA2, 5, 2);
  CHECK(count_lambda_system(sd, 1, 1, 4) == 4);
  CHECK(count_lambda_system(sd, 1, 2, 4) == 36);
  CHECK(count_lambda_system(sd, 2, 1, 20) == 20);
  CHECK_THROWS_AS(count_lambda_system(sd, 3, 1, 20), InputError);
}

TEST_CASE("coefficient bound from the counting function") {
  const auto rep = kr_inequality_check(kA2, arith::PrimePowerModulus(5, 1), {1, 0}, 1);
  CHECK(rep.rhs == doctest::Approx(1.25));
  CHECK(rep.lhs <= 1.0);
  CHECK(rep.holds);
  for (unsigned s = 1; s <= 2; ++s) CHECK(kr_inequality_check(kA2, arith::PrimePowerModulus(5, 2), {1, 0}, s).holds);
  CHECK_THROWS_AS(kr_inequality_check(kA2, arith::PrimePowerModulus(5, 1), {0, 0}, 1), InputError);
}

TEST_CASE("reduction checks") {
  const Solution diag{{3, 7}, {3, 7}};
  const auto rep = reduction_check(kA2, 5, 2, {1, 0}, diag);
  CHECK(rep.m == 0);
  CHECK(rep.modulus == 25);
  CHECK(rep.matrix_congruence);
  CHECK(rep.eigenvalue_congruence);

  const auto vac = reduction_check(kA2, 5, 2, {5, 0}, Solution{{1}, {1}});
  CHECK(vac.m == 2);
  CHECK(vac.modulus == 1);
  CHECK(vac.matrix_congruence);

  CHECK_THROWS_WITH_AS(reduction_check(kA2, 5, 2, {1, 0}, Solution{{1}, {2}}), "not a solution", InputError);

  const auto sols = enumerate_Q_solutions(kA2, arith::PrimePowerModulus(5, 2), {1, 0}, 2);
  CHECK(sols.size() == 2100);
  for (const auto& s : sols) {
    const auto r = reduction_check(kA2, 5, 2, {1, 0}, s);
    CHECK(r.matrix_congruence);
    CHECK(r.eigenvalue_congruence);
  }
}

TEST_CASE("sequence periods") {
  const auto sd = spectral_data(kA2, 5, 2);
  CHECK(sequence_period(sd, {1, 0}, 2) == 20);
  CHECK(sequence_period(sd, {1, 1}, 1) == 4);
  CHECK(sequence_period(sd, {0, 0}, 2) == 1);
}

TEST_CASE("periods are minimal and divide the lcm of orders") {
  const auto sd = spectral_data(kA2, 5, 2);
  for (std::int64_t a0 = 0; a0 < 25; a0 += 3)
    for (std::int64_t a1 = 0; a1 < 25; a1 += 4) {
      const auto t = sequence_period(sd, {a0, a1}, 2);
      CHECK(20 % t == 0);
      // Brute force over one full lcm period.
      auto value = [&](std::uint64_t x) {
        return (arith::reduce(a0, 25) * arith::pow_mod(12, x, 25) + arith::reduce(a1, 25) * arith::pow_mod(23, x, 25)) % 25;
      };
      std::uint64_t brute = 20;
      for (std::uint64_t c = 1; c <= 20; ++c) {
        bool ok = true;
        for (std::uint64_t x = 0; x < 40 && ok; ++x) ok = value(x + c) == value(x);
        if (ok) {
          brute = c;
          break;
        }
      }
      CHECK(t == brute);
    }
}

TEST_CASE("exponential sums") {
  const auto sd = spectral_data(kA2, 5, 2);
  const auto s1 = exp_sum(sd, {1, 0}, 1, 4);
  CHECK(std::abs(s1.value - std::complex<double>(-1.0, 0.0)) < 1e-12);
  const auto s2 = exp_sum(sd, {1, 1}, 1, 4);
  CHECK(std::abs(s2.value - std::complex<double>(2 + 2 * std::cos(4 * M_PI / 5), 0.0)) < 1e-12);
  CHECK(std::abs(exp_sum(sd, {0, 0}, 2, 20).value - std::complex<double>(20.0, 0.0)) < 1e-12);
  CHECK_THROWS_AS(exp_sum(sd, {1, 0}, 3, 4), InputError);
  const auto sv = saving_exponent(sd, {1, 0}, 1);
  CHECK(sv.t_r == 4);
  CHECK(std::abs(sv.saving) < 1e-12);
  CHECK_THROWS_WITH_AS(saving_exponent(sd, {0, 0}, 1), "coefficient vector divisible by p", InputError);
  CHECK_THROWS_AS(saving_exponent(sd, {5, 10}, 2), InputError);
}

TEST_CASE("worst-case saving sweep") {
  const auto sd = spectral_data(kA2, 5, 1);
  const auto w = worst_saving(sd, 1);
  // a = (1, 2): values 3, 2, 2, 3 mod 5, |S| = 4 cos(pi/5).
  CHECK(w.a == std::vector<std::int64_t>{1, 2});
  CHECK(std::abs(w.value) == doctest::Approx(4 * std::cos(M_PI / 5)));
  CHECK(std::abs(w.value) <= static_cast<double>(w.t_r));
}

TEST_CASE("moment identity") {
  const auto sd = spectral_data(kA2, 5, 2);
  const auto m1 = moment_identity(sd, 1, 1, 4);
  CHECK(m1.lhs == doctest::Approx(100.0));
  CHECK(m1.rhs == 100);
  CHECK(m1.match);
  CHECK(m1.w.size() == 2);
  CHECK(m1.w[0] == doctest::Approx(16.0));
  const auto m2 = moment_identity(sd, 1, 2, 4);
  CHECK(m2.rhs == 900);
  CHECK(m2.match);
  CHECK(m2.w[0] == doctest::Approx(256.0));
  for (unsigned s = 1; s <= 2; ++s) {
    const auto m = moment_identity(sd, 2, s, 20);
    CHECK(m.match);
    double total = 0;
    for (double x : m.w) total += x;
    CHECK(total == doctest::Approx(m.lhs));
    CHECK(m.w[0] == doctest::Approx(std::pow(20.0, 2.0 * s)));
  }
}

TEST_CASE("rate constants") {
  const auto r1 = rate_constants(1);
  CHECK(r1.kappa == Rational(1, 4));
  CHECK(r1.s0 == 2);
  CHECK(r1.eta(2) == Rational(1, 4));
  const auto r2 = rate_constants(2);
  CHECK(r2.kappa == Rational(1, 7));
  CHECK(r2.s0 == 7);
  CHECK(r2.alt_exponent(20) == Rational(1, 20));
  CHECK(r2.alt_exponent(20) <= r2.kappa);
  for (int d = 1; d <= 5; ++d) {
    const auto rc = rate_constants(d);
    CHECK(rc.eta(rc.s0) == rc.kappa);
    for (long long s = 1; s < 100; ++s) CHECK(rc.eta(s + 1) > rc.eta(s));
    for (long long s = rc.s0 + 1; s <= 100; ++s) CHECK(rc.alt_exponent(s) <= rc.kappa);
  }
  CHECK_THROWS_AS(rate_constants(0), InputError);
}
