#pragma once

// The classical map A in Sp(2d, Z): admissibility checks, characteristic
// polynomial, good primes, orders modulo p^k and the u-orbit matrix.

#include "catlab/arith.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace catlab::symplectic {

using arith::BigInt;
using arith::Residue;

/// Square integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
  explicit IntMatrix(const std::vector<std::vector<std::int64_t>>& rows);

  static IntMatrix identity(std::size_t n);

  std::size_t size() const { return n_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::vector<std::int64_t> row(std::size_t i) const;
  std::vector<std::vector<std::int64_t>> rows() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> a_;
};

/// Overflow-checked product.
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);

/// A candidate map: a 2d x 2d integer matrix. Construction only checks the
/// shape; admissibility is the job of validate_matrix.
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(IntMatrix entries);
  explicit SymplecticMatrix(const std::vector<std::vector<std::int64_t>>& rows)
      : SymplecticMatrix(IntMatrix(rows)) {}

  int d() const { return d_; }
  int dim() const { return 2 * d_; }
  const IntMatrix& entries() const { return entries_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  /// Row vector times A, exact.
  std::vector<std::int64_t> act(const std::vector<std::int64_t>& u) const;

 private:
  int d_;
  IntMatrix entries_;
};

/// The standard form matrix J = [[0, I], [-I, 0]], so omega(x, y) = x J y^T.
IntMatrix standard_form(int d);

enum class Verdict { proved, refuted, inconclusive };
std::string to_string(Verdict v);

struct ValidationReport {
  bool symplectic = false;
  bool parity_ok = false;
  Verdict irreducible = Verdict::inconclusive;
  Verdict root_of_unity_free = Verdict::inconclusive;
  std::vector<std::string> details;

  /// With assume_irreducible an inconclusive irreducibility verdict is accepted.
  bool admitted(bool assume_irreducible = false) const;
};

ValidationReport validate_matrix(const SymplecticMatrix& a);

/// Monic characteristic polynomial (exact Faddeev-LeVerrier).
arith::IntPoly char_poly(const IntMatrix& a);
inline arith::IntPoly char_poly(const SymplecticMatrix& a) { return char_poly(a.entries()); }

std::int64_t determinant(const IntMatrix& a);

/// p > 2d, p prime, p does not divide disc(f_A) det(A), f_A splits into
/// distinct linear factors mod p.
bool is_good_prime(const SymplecticMatrix& a, Residue p);

/// Ascending good primes up to limit. Throws InputError when A is not admitted.
std::vector<Residue> good_primes(const SymplecticMatrix& a, Residue limit, bool assume_irreducible = false);

/// A reduced mod m.
std::vector<Residue> reduce_mod(const IntMatrix& a, Residue m);
/// Product of n x n residue matrices mod m.
std::vector<Residue> mat_mul_mod(const std::vector<Residue>& a, const std::vector<Residue>& b, std::size_t n,
                                 Residue m);
std::vector<Residue> mat_pow_mod(const IntMatrix& a, std::uint64_t e, Residue m);
bool is_identity(const std::vector<Residue>& a, std::size_t n);

/// ord(A, p^k) = lcm of the orders of the Hensel-lifted eigenvalues,
/// cross-checked by direct powering when p^k <= 10^4.
std::uint64_t matrix_order(const SymplecticMatrix& a, Residue p, unsigned k);

struct OrbitMatrixReport {
  std::vector<std::int64_t> u;
  /// Rows u, uA, ..., uA^{2d-1}.
  std::vector<std::vector<BigInt>> x;
  BigInt det_x;
  /// nu_p(det X): the modulus drop used by the reduction checks.
  unsigned m = 0;
};

OrbitMatrixReport u_orbit_matrix(const std::vector<std::int64_t>& u, const SymplecticMatrix& a, Residue p);

// Shipped fixtures.
SymplecticMatrix fixture_a1();  // [[1,2],[2,5]]
SymplecticMatrix fixture_a2();  // [[1,4],[2,9]]
/// M^2 with M = [[0, I], [-I, T]], T = [[2,2],[2,4]].
SymplecticMatrix fixture_d2();

}  // namespace catlab::symplectic
