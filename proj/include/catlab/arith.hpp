#pragma once

// Exact arithmetic over Z/p^kZ.
//
// Residues are stored as 64-bit unsigned integers and every product goes
// through a 128-bit intermediate, so a modulus N is admissible as long as
// N < 2^62 (which keeps 2N^2 inside 128 bits).

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace catlab::arith {

using Residue = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr Residue kMaxModulus = Residue{1} << 62;

/// Integer polynomial, coefficients lowest degree first.
class IntPoly {
 public:
  IntPoly() = default;
  /// Trailing zero coefficients are dropped; the zero polynomial is rejected.
  explicit IntPoly(std::vector<std::int64_t> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::int64_t leading() const { return coeffs_.back(); }
  std::int64_t operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  bool monic() const { return leading() == 1; }

  IntPoly derivative() const;
  /// f(x) mod m for a residue x.
  Residue eval_mod(Residue x, Residue m) const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  std::vector<std::int64_t> coeffs_;
};

std::string to_string(const IntPoly& f);

/// N = p^k for an odd prime p.
class PrimePowerModulus {
 public:
  PrimePowerModulus(Residue p, unsigned k);

  Residue p() const { return p_; }
  unsigned k() const { return k_; }
  Residue N() const { return n_; }

 private:
  Residue p_;
  unsigned k_;
  Residue n_;
};

Residue mul_mod(Residue a, Residue b, Residue m);
Residue add_mod(Residue a, Residue b, Residue m);
Residue sub_mod(Residue a, Residue b, Residue m);
Residue pow_mod(Residue a, std::uint64_t e, Residue m);
/// Throws InputError when gcd(a, m) != 1.
Residue inv_mod(Residue a, Residue m);
/// Canonical representative of a signed integer in [0, m).
Residue reduce(std::int64_t a, Residue m);
Residue reduce(const BigInt& a, Residue m);

/// p^k, throwing InputError once it would reach kMaxModulus.
Residue checked_pow(Residue p, unsigned k);
/// Largest k with p^k < kMaxModulus.
unsigned max_exponent(Residue p);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);
/// Trial-division factorization, ascending primes.
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n);
/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b);

/// Largest e with p^e | z. Throws InputError for z = 0.
unsigned valuation(std::int64_t z, std::uint64_t p);
unsigned valuation(const BigInt& z, std::uint64_t p);

/// Order of a unit modulo the prime p, found among the divisors of p - 1.
std::uint64_t order_mod_p(std::int64_t lambda, Residue p);

struct OrderDetails {
  std::uint64_t order;
  std::uint64_t order_mod_p;
  /// nu_p(lambda^{ord mod p} - 1), exact when !saturated.
  unsigned gamma;
  /// lambda^{ord mod p} == 1 mod p^k, i.e. k <= gamma; then gamma == k is
  /// only a lower bound and the order equals order_mod_p. This is also the
  /// path taken for lambda == +-1 mod p^k.
  bool saturated;
};

OrderDetails order_details(std::int64_t lambda, Residue p, unsigned k);

/// Multiplicative order of lambda modulo p^k (Korobov growth
/// ord(lambda, p^k) = ord(lambda, p) * p^(k - gamma) for k >= gamma).
std::uint64_t mult_order(std::int64_t lambda, Residue p, unsigned k);

/// nu_p(lambda^{ord(lambda, p)} - 1) for the p-adic integer represented by
/// lambda. Throws NumericError when the valuation reaches the working precision
/// (e.g. lambda = 1).
unsigned korobov_gamma(std::int64_t lambda, Residue p);

/// Distinct roots of f modulo p, ascending.
std::vector<Residue> roots_mod_p(const IntPoly& f, Residue p);

/// Roots of f modulo p^k lifted from the mod-p roots by Newton iteration with
/// precision doubling. Output order follows the ascending mod-p roots.
/// Throws InputError("prime not admissible") unless f splits into distinct
/// linear factors modulo p.
std::vector<Residue> hensel_lift_roots(const IntPoly& f, Residue p, unsigned k);

/// f mod p is squarefree and divides X^p - X.
bool splits_completely(const IntPoly& f, Residue p);

/// (-1)^{n(n-1)/2} Res(f, f') / lc(f).
BigInt poly_discriminant(const IntPoly& f);

}  // namespace catlab::arith
