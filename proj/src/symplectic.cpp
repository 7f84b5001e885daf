#include "catlab/symplectic.hpp"

#include "catlab/errors.hpp"
#include "catlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace catlab::symplectic {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw NumericError("integer matrix overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw NumericError("integer matrix overflow");
  return r;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; out.size() < count; ++q)
    if (arith::is_prime(q)) out.push_back(q);
  return out;
}

// Roots of a monic polynomial (Durand-Kerner); only used for the numerical screen.
std::vector<std::complex<double>> numeric_roots(const arith::IntPoly& f) {
  const int n = f.degree();
  std::vector<std::complex<double>> z(n);
  const std::complex<double> seed(0.4, 0.9);
  double bound = 1.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, 1.0 + std::abs(static_cast<double>(f[i])));
  for (int i = 0; i < n; ++i) z[i] = bound * std::pow(seed, i);
  auto eval = [&](std::complex<double> x) {
    std::complex<double> acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * x + static_cast<double>(f[i]);
    return acc;
  };
  for (int iter = 0; iter < 500; ++iter) {
    double change = 0;
    for (int i = 0; i < n; ++i) {
      std::complex<double> denom = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      std::complex<double> step = eval(z[i]) / denom;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-14) break;
  }
  return z;
}

}  // namespace

IntMatrix::IntMatrix(const std::vector<std::vector<std::int64_t>>& rows) : n_(rows.size()), a_(n_ * n_) {
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) throw InputError("matrix must be square");
    std::copy(rows[i].begin(), rows[i].end(), a_.begin() + i * n_);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<std::int64_t> IntMatrix::row(std::size_t i) const {
  return {a_.begin() + i * n_, a_.begin() + (i + 1) * n_};
}

std::vector<std::vector<std::int64_t>> IntMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < n_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c(i, j) = checked_add(c(i, j), checked_mul(a(i, k), b(k, j)));
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t(j, i) = a(i, j);
  return t;
}

SymplecticMatrix::SymplecticMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0 || n % 2 != 0) throw InputError("matrix must be square of even dimension 2d, d >= 1");
  d_ = static_cast<int>(n / 2);
}

std::vector<std::int64_t> SymplecticMatrix::act(const std::vector<std::int64_t>& u) const {
  const std::size_t n = entries_.size();
  if (u.size() != n) throw InputError("vector length must be 2d");
  std::vector<std::int64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[j] = checked_add(out[j], checked_mul(u[i], entries_(i, j)));
  return out;
}

IntMatrix standard_form(int d) {
  IntMatrix j(2 * d);
  for (int i = 0; i < d; ++i) {
    j(i, d + i) = 1;
    j(d + i, i) = -1;
  }
  return j;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::proved: return "proved";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

bool ValidationReport::admitted(bool assume_irreducible) const {
  bool irr = irreducible == Verdict::proved || (assume_irreducible && irreducible == Verdict::inconclusive);
  return symplectic && parity_ok && irr && root_of_unity_free == Verdict::proved;
}

arith::IntPoly char_poly(const IntMatrix& a) {
  const std::size_t n = a.size();
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
  std::vector<BigInt> c(n + 1, 0);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<BigInt>> mk(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (a(i, l) != 0)
          for (std::size_t j = 0; j < n; ++j) mk[i][j] += a(i, l) * m[l][j];
    for (std::size_t i = 0; i < n; ++i) mk[i][i] += c[n - k + 1];
    BigInt trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) trace += a(i, l) * mk[l][i];
    if (trace % k != 0) throw NumericError("Faddeev-LeVerrier division not exact");
    c[n - k] = -trace / k;
    m = std::move(mk);
  }
  std::vector<std::int64_t> coeffs;
  for (auto& v : c) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
      throw NumericError("characteristic polynomial coefficient overflow");
    coeffs.push_back(static_cast<std::int64_t>(v));
  }
  return arith::IntPoly(std::move(coeffs));
}

std::int64_t determinant(const IntMatrix& a) {
  std::vector<std::vector<BigInt>> m(a.size(), std::vector<BigInt>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m[i][j] = a(i, j);
  return static_cast<std::int64_t>(poly::determinant(std::move(m)));
}

ValidationReport validate_matrix(const SymplecticMatrix& a) {
  ValidationReport rep;
  const int d = a.d();
  const IntMatrix& m = a.entries();
  const IntMatrix j = standard_form(d);

  rep.symplectic = transpose(m) * j * m == j;
  rep.details.push_back(rep.symplectic ? "A^T J A = J" : "A^T J A != J");

  rep.parity_ok = true;
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c)
      if (((m(r, c) - (r == c ? 1 : 0)) % 2) != 0) rep.parity_ok = false;
  rep.details.push_back(rep.parity_ok ? "A = I mod 2" : "A != I mod 2");

  const arith::IntPoly f = char_poly(m);
  rep.details.push_back("f_A = " + arith::to_string(f));
  const int n = f.degree();

  // Irreducibility: refute by a repeated or rational root, prove by an
  // irreducible reduction modulo a small prime.
  BigInt disc = arith::poly_discriminant(f);
  bool refuted = false;
  if (disc == 0) {
    refuted = true;
    rep.details.push_back("irreducibility refuted: repeated root (disc = 0)");
  } else {
    std::int64_t c0 = f[0];
    if (c0 == 0) {
      refuted = true;
      rep.details.push_back("irreducibility refuted: root 0");
    } else {
      std::int64_t a0 = c0 < 0 ? -c0 : c0;
      for (std::int64_t r = 1; r * r <= a0 && !refuted; ++r) {
        if (a0 % r != 0) continue;
        for (std::int64_t cand : {r, -r, a0 / r, -(a0 / r)}) {
          BigInt acc = 0;
          for (int i = n; i >= 0; --i) acc = acc * cand + f[i];
          if (acc == 0) {
            refuted = true;
            rep.details.push_back("irreducibility refuted: rational root " + std::to_string(cand));
            break;
          }
        }
      }
    }
  }
  if (refuted) {
    rep.irreducible = Verdict::refuted;
  } else {
    rep.irreducible = Verdict::inconclusive;
    for (auto q : first_primes(25)) {
      if (f.leading() % static_cast<std::int64_t>(q) == 0) continue;
      if (poly::irreducible_mod(f, q)) {
        rep.irreducible = Verdict::proved;
        rep.details.push_back("irreducible mod " + std::to_string(q));
        break;
      }
    }
    if (rep.irreducible == Verdict::inconclusive)
      rep.details.push_back("irreducibility inconclusive: no witness among the first 25 primes");
  }

  // Floating-point screen, recorded for the report.
  {
    auto z = numeric_roots(f);
    double min_unit = 1e300, min_ratio = 1e300;
    for (int i = 0; i < n; ++i) {
      min_unit = std::min(min_unit, std::abs(std::abs(z[i]) - 1.0));
      for (int k = 0; k < n; ++k)
        if (k != i) min_ratio = std::min(min_ratio, std::abs(std::abs(z[i] / z[k]) - 1.0));
    }
    std::ostringstream os;
    os << "screen: min | |mu| - 1 | = " << min_unit << ", min | |mu_i/mu_j| - 1 | = " << min_ratio;
    if (min_unit < 1e-8 || min_ratio < 1e-8) os << " (unit-modulus candidates, exact test decides)";
    rep.details.push_back(os.str());
  }

  // Exact test: cyclotomic factors of f and of g(y) / (y - 1)^n.
  poly::BigPoly fb = poly::to_big(f);
  poly::BigPoly g = poly::ratio_polynomial(f);
  for (int i = 0; i < n; ++i) {
    poly::BigPoly r;
    poly::BigPoly q = poly::divide_monic(g, {BigInt(-1), BigInt(1)}, &r);
    if (!r.empty()) throw NumericError("ratio polynomial lacks the trivial (y - 1)^n factor");
    g = std::move(q);
  }
  const unsigned bound = static_cast<unsigned>(n * n);
  rep.root_of_unity_free = Verdict::proved;
  for (unsigned order = 1; order <= 2 * bound * bound + 2; ++order) {
    if (poly::euler_phi(order) > bound) continue;
    poly::BigPoly phi = poly::cyclotomic(order);
    if (poly::degree(phi) <= n && poly::divides_monic(phi, fb)) {
      rep.root_of_unity_free = Verdict::refuted;
      rep.details.push_back("eigenvalue is a primitive " + std::to_string(order) + "-th root of unity");
      break;
    }
    if (poly::degree(g) >= 0 && poly::degree(phi) <= poly::degree(g) && poly::divides_monic(phi, g)) {
      rep.root_of_unity_free = Verdict::refuted;
      rep.details.push_back("eigenvalue ratio is a primitive " + std::to_string(order) + "-th root of unity");
      break;
    }
  }
  if (rep.root_of_unity_free == Verdict::proved)
    rep.details.push_back("no roots of unity among eigenvalues and their ratios (orders with phi <= " +
                          std::to_string(bound) + ")");
  return rep;
}

bool is_good_prime(const SymplecticMatrix& a, Residue p) {
  if (!arith::is_prime(p) || p <= static_cast<Residue>(2 * a.d())) return false;
  const arith::IntPoly f = char_poly(a);
  BigInt disc = arith::poly_discriminant(f);
  if (disc % p == 0) return false;
  if (determinant(a.entries()) % static_cast<std::int64_t>(p) == 0) return false;
  return arith::splits_completely(f, p);
}

std::vector<Residue> good_primes(const SymplecticMatrix& a, Residue limit, bool assume_irreducible) {
  if (!validate_matrix(a).admitted(assume_irreducible)) throw InputError("matrix not admitted");
  std::vector<Residue> out;
  for (Residue p = 3; p <= limit; p += 2)
    if (is_good_prime(a, p)) out.push_back(p);
  return out;
}

std::vector<Residue> reduce_mod(const IntMatrix& a, Residue m) {
  std::vector<Residue> out(a.size() * a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i * a.size() + j] = arith::reduce(a(i, j), m);
  return out;
}

std::vector<Residue> mat_mul_mod(const std::vector<Residue>& a, const std::vector<Residue>& b, std::size_t n,
                                 Residue m) {
  std::vector<Residue> c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      Residue aik = a[i * n + k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        c[i * n + j] = arith::add_mod(c[i * n + j], arith::mul_mod(aik, b[k * n + j], m), m);
    }
  return c;
}

std::vector<Residue> mat_pow_mod(const IntMatrix& a, std::uint64_t e, Residue m) {
  const std::size_t n = a.size();
  std::vector<Residue> result = reduce_mod(IntMatrix::identity(n), m);
  std::vector<Residue> base = reduce_mod(a, m);
  while (e) {
    if (e & 1) result = mat_mul_mod(result, base, n, m);
    base = mat_mul_mod(base, base, n, m);
    e >>= 1;
  }
  return result;
}

bool is_identity(const std::vector<Residue>& a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a[i * n + j] != (i == j ? 1u : 0u)) return false;
  return true;
}

std::uint64_t matrix_order(const SymplecticMatrix& a, Residue p, unsigned k) {
  const Residue n = arith::checked_pow(p, k);
  const std::size_t dim = a.entries().size();
  if (is_identity(reduce_mod(a.entries(), n), dim)) return 1;
  if (!is_good_prime(a, p)) throw InputError("p = " + std::to_string(p) + " is not a good prime for this matrix");
  std::uint64_t order = 1;
  for (Residue lam : arith::hensel_lift_roots(char_poly(a), p, k))
    order = arith::checked_lcm(order, arith::mult_order(static_cast<std::int64_t>(lam), p, k));
  if (n <= 10000) {
    bool ok = is_identity(mat_pow_mod(a.entries(), order, n), dim);
    for (auto [q, e] : arith::factor(order)) {
      (void)e;
      if (is_identity(mat_pow_mod(a.entries(), order / q, n), dim)) ok = false;
    }
    if (!ok) throw NumericError("eigenvalue order disagrees with direct matrix powering");
  }
  return order;
}

OrbitMatrixReport u_orbit_matrix(const std::vector<std::int64_t>& u, const SymplecticMatrix& a, Residue p) {
  const std::size_t n = a.entries().size();
  if (u.size() != n) throw InputError("u must have length 2d");
  if (std::all_of(u.begin(), u.end(), [](std::int64_t v) { return v == 0; }))
    throw InputError("u must be nonzero");
  OrbitMatrixReport rep;
  rep.u = u;
  std::vector<BigInt> cur(u.begin(), u.end());
  for (std::size_t r = 0; r < n; ++r) {
    rep.x.push_back(cur);
    std::vector<BigInt> next(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[j] += cur[i] * a(i, j);
    cur = std::move(next);
  }
  rep.det_x = poly::determinant(rep.x);
  if (rep.det_x == 0) throw InputError("linear independence violated");
  rep.m = arith::valuation(rep.det_x, p);
  return rep;
}

SymplecticMatrix fixture_a1() { return SymplecticMatrix({{1, 2}, {2, 5}}); }

SymplecticMatrix fixture_a2() { return SymplecticMatrix({{1, 4}, {2, 9}}); }

SymplecticMatrix fixture_d2() {
  IntMatrix m(4);
  const std::int64_t t[2][2] = {{2, 2}, {2, 4}};
  for (int i = 0; i < 2; ++i) {
    m(i, 2 + i) = 1;
    m(2 + i, i) = -1;
    for (int j = 0; j < 2; ++j) m(2 + i, 2 + j) = t[i][j];
  }
  return SymplecticMatrix(m * m);
}

}  // namespace catlab::symplectic
