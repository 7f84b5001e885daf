#include "catlab/arith.hpp"
#include "catlab/spectra.hpp"
#include "catlab/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace catlab;
using arith::Residue;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << " " << name << ": " << detail << std::endl;
}

const symplectic::SymplecticMatrix kA2 = symplectic::fixture_a2();
const quant::Observable kCos(1, {{{1, 0}, 0.5}, {{-1, 0}, 0.5}}, "cos_x1");

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  criterion(1, "heisenberg-algebra", [](std::string& detail) {
    const auto t0 = Clock::now();
    double worst = 0;
    for (std::int64_t a = 0; a < 5; ++a)
      for (std::int64_t b = 0; b < 5; ++b)
        for (std::int64_t c = 0; c < 5; ++c)
          for (std::int64_t e = 0; e < 5; ++e) {
            const quant::HeisenbergIndex u{a, b}, v{c, e};
            auto rhs = quant::heisenberg_matrix({a + c, b + e}, 5, 1);
            rhs *= std::polar(1.0, M_PI * static_cast<double>(arith::reduce(quant::omega(u, v), 10)) / 5.0);
            const auto lhs = quant::heisenberg_matrix(u, 5, 1) * quant::heisenberg_matrix(v, 5, 1);
            worst = std::max(worst, linalg::max_abs(lhs - rhs));
          }
    const double secs = seconds_since(t0);
    detail = "max deviation " + num(worst) + " over 625 pairs in " + num(secs) + " s";
    return worst < 1e-12 && secs < 1.0;
  });

  criterion(2, "egorov", [](std::string& detail) {
    const auto t0 = Clock::now();
    bool ok = true;
    for (unsigned k = 1; k <= 3; ++k) {
      const arith::PrimePowerModulus ctx(5, k);
      const auto u = quant::build_propagator(kA2, ctx);
      const double eg = quant::egorov_residual(u, kA2, 100, 0);
      const double un = linalg::unitarity_residual(u.matrix);
      const auto sc = quant::power_scalar(u, symplectic::matrix_order(kA2, 5, k));
      ok = ok && eg < 1e-10 && un < 1e-10 && sc.deviation < 1e-9;
      detail += "k=" + std::to_string(k) + " egorov " + num(eg) + " unitarity " + num(un) + " scalar " +
                num(sc.deviation) + "; ";
    }
    const double secs = seconds_since(t0);
    detail += num(secs) + " s";
    return ok && secs < 60.0;
  });

  criterion(3, "order-growth", [](std::string& detail) {
    bool ok = true;
    for (unsigned k = 1; k <= 6; ++k) {
      const auto t = symplectic::matrix_order(kA2, 5, k);
      ok = ok && t == 4 * arith::checked_pow(5, k - 1);
      if (k <= 3) {
        const Residue n = arith::checked_pow(5, k);
        auto pw = symplectic::reduce_mod(kA2.entries(), n);
        const auto base = pw;
        std::uint64_t brute = 1;
        while (!symplectic::is_identity(pw, 2)) {
          pw = symplectic::mat_mul_mod(pw, base, 2, n);
          ++brute;
        }
        ok = ok && brute == t;
      }
      detail += std::to_string(t) + (k < 6 ? " " : "");
    }
    return ok;
  });

  criterion(4, "hensel", [](std::string& detail) {
    const arith::IntPoly f({1, -10, 1});
    bool ok = true;
    for (unsigned k = 1; k <= 12; ++k) {
      const Residue n = arith::checked_pow(5, k);
      for (Residue r : arith::hensel_lift_roots(f, 5, k)) {
        const Residue v = arith::add_mod(arith::sub_mod(arith::mul_mod(r, r, n), arith::mul_mod(10 % n, r, n), n), 1 % n, n);
        ok = ok && v == 0;
      }
    }
    const auto k2 = arith::hensel_lift_roots(f, 5, 2);
    ok = ok && k2 == std::vector<Residue>{12, 23};
    detail = "k=2 roots {" + std::to_string(k2.at(0)) + "," + std::to_string(k2.at(1)) + "}";
    return ok;
  });

  criterion(5, "moment-identity", [](std::string& detail) {
    const auto sd = verify::spectral_data(kA2, 5, 2);
    bool ok = true;
    const unsigned cases[4][3] = {{1, 1, 4}, {1, 2, 4}, {2, 1, 20}, {2, 2, 20}};
    for (const auto& cs : cases) {
      const auto m = verify::moment_identity(sd, cs[0], cs[1], cs[2]);
      const double rel = std::abs(m.lhs - static_cast<double>(m.rhs)) / static_cast<double>(m.rhs);
      ok = ok && m.match && rel < 1e-6 && std::llround(m.lhs) == static_cast<long long>(m.rhs);
      detail += std::to_string(m.rhs) + " ";
    }
    ok = ok && verify::moment_identity(sd, 1, 1, 4).rhs == 100 && verify::moment_identity(sd, 1, 2, 4).rhs == 900;
    return ok;
  });

  criterion(6, "counting-oracle", [](std::string& detail) {
    bool ok = true;
    const unsigned cases[3][2] = {{1, 1}, {1, 2}, {2, 1}};
    for (const auto& cs : cases) {
      const arith::PrimePowerModulus ctx(5, cs[0]);
      const auto fast = verify::count_Q(kA2, ctx, {1, 0}, cs[1]);
      const auto slow = verify::count_Q(kA2, ctx, {1, 0}, cs[1], verify::CountMethod::naive);
      ok = ok && fast.count == slow.count;
      detail += std::to_string(fast.count) + "=" + std::to_string(slow.count) + " ";
    }
    ok = ok && verify::count_Q(kA2, arith::PrimePowerModulus(5, 1), {1, 0}, 1).count == 4;
    return ok;
  });

  criterion(7, "coefficient-bound", [](std::string& detail) {
    bool ok = true;
    for (unsigned k = 1; k <= 3; ++k)
      for (unsigned s = 1; s <= 2; ++s) {
        const auto rep = verify::kr_inequality_check(kA2, arith::PrimePowerModulus(5, k), {1, 0}, s);
        ok = ok && rep.lhs <= rep.rhs + 1e-9;
        detail += num(rep.lhs) + "<=" + num(rep.rhs) + " ";
      }
    return ok;
  });

  criterion(8, "congruence-reduction", [](std::string& detail) {
    const auto sols = verify::enumerate_Q_solutions(kA2, arith::PrimePowerModulus(5, 2), {1, 0}, 2);
    const auto orbit = symplectic::u_orbit_matrix({1, 0}, kA2, 5);
    bool ok = orbit.m == 0 && !sols.empty();
    for (const auto& s : sols) {
      const auto rep = verify::reduction_check(kA2, 5, 2, {1, 0}, s);
      ok = ok && rep.m == 0 && rep.matrix_congruence && rep.eigenvalue_congruence;
    }
    detail = std::to_string(sols.size()) + " solutions, m=" + std::to_string(orbit.m);
    return ok;
  });

  criterion(9, "expsum-saving", [](std::string& detail) {
    const auto sd = verify::spectral_data(kA2, 5, 3);
    bool ok = true;
    for (unsigned r = 1; r <= 3; ++r) {
      const auto w = verify::worst_saving(sd, r);
      ok = ok && w.saving <= 0.7;
      detail += "r=" + std::to_string(r) + " worst " + num(w.saving) + " at (" + std::to_string(w.a[0]) + "," +
                std::to_string(w.a[1]) + "); ";
    }
    const auto s = verify::exp_sum(sd, {1, 0}, 1, 4);
    ok = ok && std::abs(s.value - std::complex<double>(-1.0, 0.0)) < 1e-12;
    detail += "S(1,0)=" + num(s.value.real());
    return ok;
  });

  criterion(10, "discrepancy-decay", [](std::string& detail) {
    const auto t0 = Clock::now();
    const auto table = spectra::decay_experiment(kA2, 5, 1, 3, kCos, 0);
    const auto& r = table.rows;
    bool ok = r.size() == 3 && r[0].delta > r[1].delta && r[1].delta > r[2].delta && table.slope &&
              *table.slope <= -0.25;
    const double secs = seconds_since(t0);
    for (const auto& row : r) detail += num(row.delta) + " ";
    detail += "slope " + (table.slope ? num(*table.slope) : std::string("undefined")) + " in " + num(secs) + " s";
    return ok && secs < 300.0;
  });

  criterion(11, "rate-constants", [](std::string& detail) {
    using verify::Rational;
    bool ok = verify::rate_constants(1).kappa == Rational(1, 4) && verify::rate_constants(2).kappa == Rational(1, 7);
    for (int d = 1; d <= 5; ++d) {
      const auto rc = verify::rate_constants(d);
      ok = ok && rc.eta(rc.s0) == rc.kappa;
      for (long long s = 1; s < 100; ++s) ok = ok && rc.eta(s) < rc.eta(s + 1);
      detail += std::to_string(rc.kappa.numerator()) + "/" + std::to_string(rc.kappa.denominator()) + " ";
    }
    return ok;
  });

  criterion(12, "determinism", [](std::string& detail) {
    const std::string base = std::string(CATLAB_EXE) + " discrepancy --matrix " CATLAB_FIXTURES
                             "/a2.json -p 5 --k-min 1 --k-max 2 --observable " CATLAB_FIXTURES
                             "/cos_x1.json --seed 0 --out ";
    const std::string f1 = "acceptance_run1.csv", f2 = "acceptance_run2.csv";
    const int c1 = std::system((base + f1 + " > /dev/null").c_str());
    const int c2 = std::system((base + f2 + " > /dev/null").c_str());
    const std::string a = slurp(f1), b = slurp(f2);
    detail = std::to_string(a.size()) + " bytes per run";
    return c1 == 0 && c2 == 0 && !a.empty() && a == b;
  });

  return failures == 0 ? 0 : 1;
}
