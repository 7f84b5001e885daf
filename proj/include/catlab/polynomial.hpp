#pragma once

// Polynomial kernels shared by arith and symplectic: dense polynomials over
// F_q (small prime q) and over Z with arbitrary-precision coefficients.

#include "catlab/arith.hpp"

#include <vector>

namespace catlab::poly {

using arith::BigInt;
using arith::Residue;

// ---- F_q[x], coefficients lowest degree first, always trimmed ----

using ModPoly = std::vector<Residue>;

ModPoly reduce(const arith::IntPoly& f, Residue q);
void trim(ModPoly& a);
int degree(const ModPoly& a);
ModPoly add(const ModPoly& a, const ModPoly& b, Residue q);
ModPoly sub(const ModPoly& a, const ModPoly& b, Residue q);
ModPoly mul(const ModPoly& a, const ModPoly& b, Residue q);
/// Remainder of a modulo a nonzero polynomial f.
ModPoly rem(const ModPoly& a, const ModPoly& f, Residue q);
/// Quotient of a by a nonzero polynomial f (remainder discarded).
ModPoly quotient(const ModPoly& a, const ModPoly& f, Residue q);
ModPoly mul_mod(const ModPoly& a, const ModPoly& b, const ModPoly& f, Residue q);
ModPoly pow_mod(const ModPoly& a, std::uint64_t e, const ModPoly& f, Residue q);
/// Monic gcd; gcd(0, 0) = 0.
ModPoly gcd(ModPoly a, ModPoly b, Residue q);
ModPoly derivative(const ModPoly& a, Residue q);
ModPoly make_monic(const ModPoly& a, Residue q);

/// Rabin's test. Requires q prime and q not dividing the leading coefficient.
bool irreducible_mod(const arith::IntPoly& f, Residue q);

// ---- Z[x] with big coefficients ----

using BigPoly = std::vector<BigInt>;

BigPoly to_big(const arith::IntPoly& f);
void trim(BigPoly& a);
int degree(const BigPoly& a);

/// Determinant of a square integer matrix (Bareiss elimination).
BigInt determinant(std::vector<std::vector<BigInt>> m);

/// Res(a, b) through the Sylvester matrix, taking the formal degrees
/// a.size() - 1 and b.size() - 1 (leading zeros allowed).
BigInt resultant(const BigPoly& a, const BigPoly& b);

/// g(y) = Res_x(f(x), f(xy)); its roots are all ratios of roots of f,
/// including the trivial ratio 1 with multiplicity deg f.
BigPoly ratio_polynomial(const arith::IntPoly& f);

/// Quotient of a by a monic divisor; `remainder` receives the remainder.
BigPoly divide_monic(const BigPoly& a, const BigPoly& divisor, BigPoly* remainder = nullptr);
bool divides_monic(const BigPoly& divisor, const BigPoly& a);

unsigned euler_phi(unsigned n);
/// n-th cyclotomic polynomial.
BigPoly cyclotomic(unsigned n);

}  // namespace catlab::poly
