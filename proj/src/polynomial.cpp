#include "catlab/polynomial.hpp"

#include "catlab/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <utility>

namespace catlab::poly {

using arith::add_mod;
using arith::inv_mod;
using arith::mul_mod;
using arith::sub_mod;
using BigRational = boost::multiprecision::cpp_rational;

ModPoly reduce(const arith::IntPoly& f, Residue q) {
  ModPoly out(f.coeffs().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = arith::reduce(f[i], q);
  trim(out);
  return out;
}

void trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly add(const ModPoly& a, const ModPoly& b, Residue q) {
  ModPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = add_mod(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0, q);
  trim(out);
  return out;
}

ModPoly sub(const ModPoly& a, const ModPoly& b, Residue q) {
  ModPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = sub_mod(i < a.size() ? a[i] % q : 0, i < b.size() ? b[i] % q : 0, q);
  trim(out);
  return out;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, Residue q) {
  if (a.empty() || b.empty()) return {};
  ModPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], q), q);
  trim(out);
  return out;
}

namespace {

// Long division in place; returns the quotient, leaves the remainder in num.
ModPoly divide(ModPoly& num, const ModPoly& f, Residue q) {
  int df = degree(f);
  if (df < 0) throw std::invalid_argument("polynomial division by zero");
  int dn = degree(num);
  if (dn < df) return {};
  ModPoly quo(dn - df + 1, 0);
  Residue inv_lead = inv_mod(f.back(), q);
  for (int i = dn - df; i >= 0; --i) {
    Residue c = mul_mod(num[i + df], inv_lead, q);
    quo[i] = c;
    if (c == 0) continue;
    for (int j = 0; j <= df; ++j) num[i + j] = sub_mod(num[i + j], mul_mod(c, f[j], q), q);
  }
  trim(num);
  trim(quo);
  return quo;
}

}  // namespace

ModPoly rem(const ModPoly& a, const ModPoly& f, Residue q) {
  ModPoly num = a;
  trim(num);
  divide(num, f, q);
  return num;
}

ModPoly quotient(const ModPoly& a, const ModPoly& f, Residue q) {
  ModPoly num = a;
  trim(num);
  return divide(num, f, q);
}

ModPoly mul_mod(const ModPoly& a, const ModPoly& b, const ModPoly& f, Residue q) {
  return rem(mul(a, b, q), f, q);
}

ModPoly pow_mod(const ModPoly& a, std::uint64_t e, const ModPoly& f, Residue q) {
  ModPoly result = rem({1}, f, q);
  ModPoly base = rem(a, f, q);
  while (e) {
    if (e & 1) result = mul_mod(result, base, f, q);
    base = mul_mod(base, base, f, q);
    e >>= 1;
  }
  return result;
}

ModPoly make_monic(const ModPoly& a, Residue q) {
  if (a.empty()) return a;
  Residue inv = inv_mod(a.back(), q);
  ModPoly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mul_mod(a[i], inv, q);
  return out;
}

ModPoly gcd(ModPoly a, ModPoly b, Residue q) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ModPoly r = rem(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, q);
}

ModPoly derivative(const ModPoly& a, Residue q) {
  if (a.size() <= 1) return {};
  ModPoly out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = mul_mod(a[i], i % q, q);
  trim(out);
  return out;
}

bool irreducible_mod(const arith::IntPoly& f, Residue q) {
  ModPoly g = reduce(f, q);
  int n = degree(g);
  if (n != f.degree()) throw InputError("q divides the leading coefficient");
  if (n <= 0) return false;
  if (n == 1) return true;
  g = make_monic(g, q);
  const ModPoly x{0, 1};
  // frob[j] = x^{q^j} mod g
  std::vector<ModPoly> frob{rem(x, g, q)};
  for (int j = 1; j <= n; ++j) frob.push_back(pow_mod(frob.back(), q, g, q));
  if (!sub(frob[n], x, q).empty()) return false;
  for (auto [r, e] : arith::factor(static_cast<std::uint64_t>(n))) {
    (void)e;
    ModPoly h = gcd(g, sub(frob[n / r], x, q), q);
    if (degree(h) > 0) return false;
  }
  return true;
}

BigPoly to_big(const arith::IntPoly& f) {
  BigPoly out;
  for (auto c : f.coeffs()) out.emplace_back(c);
  return out;
}

void trim(BigPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const BigPoly& a) { return static_cast<int>(a.size()) - 1; }

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt resultant(const BigPoly& a, const BigPoly& b) {
  const std::size_t da = a.size() - 1, db = b.size() - 1;
  const std::size_t n = da + db;
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> syl(n, std::vector<BigInt>(n, 0));
  // Rows hold coefficients highest degree first.
  for (std::size_t r = 0; r < db; ++r)
    for (std::size_t i = 0; i <= da; ++i) syl[r][r + i] = a[da - i];
  for (std::size_t r = 0; r < da; ++r)
    for (std::size_t i = 0; i <= db; ++i) syl[db + r][r + i] = b[db - i];
  return determinant(std::move(syl));
}

BigPoly ratio_polynomial(const arith::IntPoly& f) {
  const int n = f.degree();
  const int deg_g = n * n;
  BigPoly fb = to_big(f);
  // Evaluate g at y = 0..deg_g and interpolate (Newton divided differences).
  std::vector<BigRational> xs, dd;
  for (int y = 0; y <= deg_g; ++y) {
    BigPoly h(n + 1);
    BigInt pw = 1;
    for (int i = 0; i <= n; ++i) {
      h[i] = fb[i] * pw;
      pw *= y;
    }
    xs.emplace_back(y);
    dd.emplace_back(resultant(fb, h));
  }
  for (int level = 1; level <= deg_g; ++level)
    for (int i = deg_g; i >= level; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
  std::vector<BigRational> coeffs(deg_g + 1, BigRational(0));
  for (int i = deg_g; i >= 0; --i) {
    // coeffs = coeffs * (y - xs[i]) + dd[i]
    std::vector<BigRational> next(deg_g + 1, BigRational(0));
    for (int j = 0; j < deg_g; ++j) {
      next[j + 1] += coeffs[j];
      next[j] -= coeffs[j] * xs[i];
    }
    next[0] += dd[i];
    coeffs = std::move(next);
  }
  BigPoly g;
  for (auto& c : coeffs) {
    if (boost::multiprecision::denominator(c) != 1) throw NumericError("ratio polynomial not integral");
    g.push_back(boost::multiprecision::numerator(c));
  }
  trim(g);
  return g;
}

BigPoly divide_monic(const BigPoly& a, const BigPoly& divisor, BigPoly* remainder) {
  BigPoly num = a;
  trim(num);
  int dd = degree(divisor);
  if (dd < 0 || divisor.back() != 1) throw std::invalid_argument("divisor must be monic");
  int dn = degree(num);
  BigPoly quo;
  if (dn >= dd) {
    quo.assign(dn - dd + 1, 0);
    for (int i = dn - dd; i >= 0; --i) {
      BigInt c = num[i + dd];
      quo[i] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dd; ++j) num[i + j] -= c * divisor[j];
    }
  }
  trim(num);
  trim(quo);
  if (remainder) *remainder = std::move(num);
  return quo;
}

bool divides_monic(const BigPoly& divisor, const BigPoly& a) {
  BigPoly r;
  divide_monic(a, divisor, &r);
  return r.empty();
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (auto [q, e] : arith::factor(n)) {
    (void)e;
    result = result / static_cast<unsigned>(q) * static_cast<unsigned>(q - 1);
  }
  return result;
}

BigPoly cyclotomic(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic index must be positive");
  // Build Phi_d for every d | n bottom-up: Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e.
  std::vector<std::uint64_t> divs = arith::divisors(n);
  std::vector<BigPoly> phis;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    BigPoly num(divs[i] + 1, 0);
    num[0] = -1;
    num[divs[i]] = 1;
    for (std::size_t j = 0; j < i; ++j)
      if (divs[i] % divs[j] == 0) num = divide_monic(num, phis[j]);
    phis.push_back(std::move(num));
  }
  return phis.back();
}

}  // namespace catlab::poly
