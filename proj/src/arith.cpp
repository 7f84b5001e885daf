#include "catlab/arith.hpp"

#include "catlab/errors.hpp"
#include "catlab/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace catlab::arith {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

}  // namespace

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.empty()) throw InputError("zero polynomial");
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() == 1) throw InputError("derivative of a constant polynomial");
  std::vector<std::int64_t> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    std::int64_t v;
    if (__builtin_mul_overflow(coeffs_[i], static_cast<std::int64_t>(i), &v))
      throw NumericError("polynomial coefficient overflow");
    d[i - 1] = v;
  }
  return IntPoly(std::move(d));
}

Residue IntPoly::eval_mod(Residue x, Residue m) const {
  Residue acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = add_mod(mul_mod(acc, x, m), reduce(*it, m), m);
  return acc;
}

std::string to_string(const IntPoly& f) {
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    std::int64_t c = f[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || i == 0) os << a;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

PrimePowerModulus::PrimePowerModulus(Residue p, unsigned k) : p_(p), k_(k) {
  if (p == 2 || !is_prime(p)) throw InputError("modulus must be an odd prime power");
  if (k < 1) throw InputError("exponent k must be at least 1");
  n_ = checked_pow(p, k);
}

Residue mul_mod(Residue a, Residue b, Residue m) {
  return static_cast<Residue>((static_cast<u128>(a) * b) % m);
}

Residue add_mod(Residue a, Residue b, Residue m) {
  Residue s = a + b;  // both < 2^62, no wrap
  return s >= m ? s - m : s;
}

Residue sub_mod(Residue a, Residue b, Residue m) { return a >= b ? a - b : a + m - b; }

Residue pow_mod(Residue a, std::uint64_t e, Residue m) {
  Residue result = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) result = mul_mod(result, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return result;
}

Residue inv_mod(Residue a, Residue m) {
  i128 r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  while (r1 != 0) {
    i128 q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
  }
  if (r0 != 1) throw InputError("not a unit");
  s0 %= static_cast<i128>(m);
  if (s0 < 0) s0 += m;
  return static_cast<Residue>(s0);
}

Residue reduce(std::int64_t a, Residue m) {
  i128 r = static_cast<i128>(a) % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

Residue reduce(const BigInt& a, Residue m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

Residue checked_pow(Residue p, unsigned k) {
  Residue n = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (n >= kMaxModulus / p) throw InputError("modulus p^k too large for 128-bit residue arithmetic");
    n *= p;
  }
  return n;
}

unsigned max_exponent(Residue p) {
  unsigned k = 0;
  Residue n = 1;
  while (n < kMaxModulus / p) {
    n *= p;
    ++k;
  }
  return k;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulm = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % n);
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = 1, base = a, e = d;
    while (e) {
      if (e & 1) x = mulm(x, base);
      base = mulm(base, base);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulm(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q * q <= n; q += (q == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e) out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> divs{1};
  for (auto [q, e] : factor(n)) {
    std::size_t base = divs.size();
    std::uint64_t pw = 1;
    for (unsigned i = 0; i < e; ++i) {
      pw *= q;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pw);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t out;
  if (__builtin_mul_overflow(a / g, b, &out)) throw NumericError("lcm overflow");
  return out;
}

unsigned valuation(std::int64_t z, std::uint64_t p) {
  if (z == 0) throw InputError("valuation of zero undefined");
  if (p < 2) throw InputError("valuation base must be prime");
  unsigned e = 0;
  i128 v = z;
  while (v % static_cast<i128>(p) == 0) {
    v /= static_cast<i128>(p);
    ++e;
  }
  return e;
}

unsigned valuation(const BigInt& z, std::uint64_t p) {
  if (z == 0) throw InputError("valuation of zero undefined");
  if (p < 2) throw InputError("valuation base must be prime");
  unsigned e = 0;
  BigInt v = z;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

std::uint64_t order_mod_p(std::int64_t lambda, Residue p) {
  Residue a = reduce(lambda, p);
  if (a == 0) throw InputError("not a unit");
  std::uint64_t t = p - 1;
  for (auto [q, e] : factor(p - 1)) {
    for (unsigned i = 0; i < e && pow_mod(a, t / q, p) == 1; ++i) t /= q;
  }
  return t;
}

OrderDetails order_details(std::int64_t lambda, Residue p, unsigned k) {
  Residue n = checked_pow(p, k);
  std::uint64_t t1 = order_mod_p(lambda, p);
  Residue v = pow_mod(reduce(lambda, n), t1, n);
  if (v == 1) return {t1, t1, k, true};
  // v != 1 mod p^k, so gamma = nu_p(v - 1) < k and the growth formula applies.
  unsigned gamma = valuation(static_cast<std::int64_t>(v - 1), p);
  std::uint64_t order = t1;
  for (unsigned i = gamma; i < k; ++i) order *= p;
  return {order, t1, gamma, false};
}

std::uint64_t mult_order(std::int64_t lambda, Residue p, unsigned k) {
  return order_details(lambda, p, k).order;
}

unsigned korobov_gamma(std::int64_t lambda, Residue p) {
  OrderDetails det = order_details(lambda, p, max_exponent(p));
  if (det.saturated) throw NumericError("gamma exceeds working precision (lambda = +-1?)");
  return det.gamma;
}

std::vector<Residue> roots_mod_p(const IntPoly& f, Residue p) {
  poly::ModPoly g = poly::reduce(f, p);
  if (poly::degree(g) < 1) return {};
  std::vector<Residue> roots;
  if (p <= 4096) {
    for (Residue x = 0; x < p; ++x)
      if (f.eval_mod(x, p) == 0) roots.push_back(x);
    return roots;
  }
  // Cantor-Zassenhaus equal-degree splitting of gcd(f, x^p - x).
  g = poly::make_monic(g, p);
  poly::ModPoly xp = poly::pow_mod({0, 1}, p, g, p);
  poly::ModPoly lin = poly::gcd(g, poly::sub(xp, {0, 1}, p), p);
  std::vector<poly::ModPoly> work{lin};
  Residue shift = 0;
  while (!work.empty()) {
    poly::ModPoly h = work.back();
    work.pop_back();
    int dh = poly::degree(h);
    if (dh < 1) continue;
    if (dh == 1) {
      roots.push_back(sub_mod(0, h[0], p));
      continue;
    }
    for (;; ++shift) {
      poly::ModPoly s = poly::pow_mod({shift % p, 1}, (p - 1) / 2, h, p);
      poly::ModPoly part = poly::gcd(h, poly::sub(s, {1}, p), p);
      int dp = poly::degree(part);
      if (dp > 0 && dp < dh) {
        work.push_back(poly::quotient(h, part, p));
        work.push_back(part);
        ++shift;
        break;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Residue> hensel_lift_roots(const IntPoly& f, Residue p, unsigned k) {
  if (!is_prime(p)) throw InputError("p must be prime");
  if (f.leading() % static_cast<std::int64_t>(p) == 0) throw InputError("p divides the leading coefficient");
  if (!splits_completely(f, p)) throw InputError("prime not admissible");
  Residue target = checked_pow(p, k);
  IntPoly df = f.derivative();
  std::vector<Residue> roots = roots_mod_p(f, p);
  for (Residue& lam : roots) {
    unsigned prec = 1;
    while (prec < k) {
      prec = std::min(2 * prec, k);
      Residue m = checked_pow(p, prec);
      Residue step = mul_mod(f.eval_mod(lam, m), inv_mod(df.eval_mod(lam, m), m), m);
      lam = sub_mod(lam % m, step, m);
    }
    lam %= target;
    if (f.eval_mod(lam, target) != 0) throw NumericError("Hensel lift failed to converge");
  }
  return roots;
}

bool splits_completely(const IntPoly& f, Residue p) {
  if (f.leading() % static_cast<std::int64_t>(p) == 0) throw InputError("p divides the leading coefficient");
  poly::ModPoly g = poly::make_monic(poly::reduce(f, p), p);
  if (poly::degree(g) < 1) return true;
  poly::ModPoly common = poly::gcd(g, poly::derivative(g, p), p);
  if (poly::degree(common) > 0) return false;
  poly::ModPoly xp = poly::pow_mod({0, 1}, p, g, p);
  return poly::rem(poly::sub(xp, {0, 1}, p), g, p).empty();
}

BigInt poly_discriminant(const IntPoly& f) {
  int n = f.degree();
  if (n < 2) throw InputError("discriminant needs degree >= 2");
  BigInt res = poly::resultant(poly::to_big(f), poly::to_big(f.derivative()));
  BigInt lc = f.leading();
  if (res % lc != 0) throw NumericError("discriminant division not exact");
  BigInt disc = res / lc;
  if ((n * (n - 1) / 2) % 2 == 1) disc = -disc;
  return disc;
}

}  // namespace catlab::arith
