#pragma once

// The finite Hilbert space H_N = C^{(Z/NZ)^d}, the Heisenberg operators
// T_N(u), observables Op_N(f) and the propagator U_N(A).

#include "catlab/arith.hpp"
#include "catlab/linalg.hpp"
#include "catlab/symplectic.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace catlab::quant {

using arith::Residue;
using linalg::CMatrix;
using linalg::cplx;

/// Largest N^d for which operators are materialized as dense matrices.
inline constexpr std::size_t kDenseBudget = 4096;

/// N^d, throwing NumericError when it does not fit the index space.
std::size_t space_dimension(Residue n, int d);
/// Throws NumericError("dense budget exceeded ...") above kDenseBudget.
std::size_t dense_dimension(Residue n, int d);

/// Lexicographic index of w in (Z/NZ)^d, first component most significant.
std::size_t encode(const std::vector<Residue>& w, Residue n);
std::vector<Residue> decode(std::size_t index, Residue n, int d);

struct StateVector {
  Residue N = 0;
  int d = 0;
  std::vector<cplx> values;

  StateVector() = default;
  StateVector(Residue n, int dd);
  StateVector(Residue n, int dd, std::vector<cplx> v);

  std::size_t size() const { return values.size(); }
};

/// <phi1, phi2> = N^{-d} sum_w phi1(w) conj(phi2(w)).
cplx inner(const StateVector& phi1, const StateVector& phi2);
/// Norm under the normalized inner product; 1 means sum |psi|^2 = N^d.
double norm(const StateVector& phi);

/// An integer vector u = (u1, u2) of length 2d. Not reduced mod N: the phase
/// e_{2N}(u1.u2) depends on the representative.
using HeisenbergIndex = std::vector<std::int64_t>;

/// Canonical representative, entries in [0, N).
HeisenbergIndex canonical(const HeisenbergIndex& u, Residue n);
/// omega(u, v) = u1.v2 - u2.v1.
std::int64_t omega(const HeisenbergIndex& u, const HeisenbergIndex& v);
/// Exponent of the (w, w + u1) entry of T_N(u) in units of e_{2N}:
/// u1.u2 + 2 u2.w mod 2N.
Residue phase_exponent(const HeisenbergIndex& u, const std::vector<Residue>& w, Residue n);

/// (T_N(u) phi)(w) = e_{2N}(u1.u2) e_N(u2.w) phi(w + u1), matrix-free.
StateVector apply_heisenberg(const HeisenbergIndex& u, const StateVector& phi);
/// Dense monomial matrix of T_N(u).
CMatrix heisenberg_matrix(const HeisenbergIndex& u, Residue n, int d);

/// Finite trigonometric polynomial f(x) = sum_u fhat(u) e(u.x) with Hermitian
/// symmetric coefficients fhat(-u) = conj(fhat(u)).
class Observable {
 public:
  using Terms = std::map<HeisenbergIndex, cplx>;

  /// Throws InputError("observable not real-valued") unless Hermitian symmetric.
  Observable(int d, Terms terms, std::string id = "");
  /// Inserts missing conjugate terms; conflicting pairs are still rejected.
  static Observable symmetrized(int d, Terms terms, std::string id = "");

  int d() const { return d_; }
  const Terms& terms() const { return terms_; }
  const std::string& id() const { return id_; }
  /// fhat(0), the integral of f over the torus.
  double mean() const;
  /// sum_{u != 0} |fhat(u)|
  double nonconstant_l1() const;

 private:
  int d_;
  Terms terms_;
  std::string id_;
};

/// Op_N(f) = sum_u fhat(u) T_N(u).
CMatrix observable_operator(const Observable& f, Residue n);

struct Propagator {
  Residue N = 0;
  int d = 0;
  CMatrix matrix;
  /// Entry (i, j) is |row scale| * e_{2N}(exponent); -1 marks a zero entry.
  std::optional<std::vector<std::int32_t>> phase_exponents;

  std::size_t dim() const { return matrix.rows(); }
};

/// The unitary U with U^dagger T(u) U = T(uA) for all u, normalized so that the
/// first nonzero entry of row 0 is positive real. Requires a symplectic A with
/// A = I mod 2; goodness of p is not needed.
Propagator build_propagator(const symplectic::SymplecticMatrix& a, const arith::PrimePowerModulus& ctx);

/// max over the 2d generators and sample_size random u in [0, N)^{2d} of
/// ||U^dagger T(u) U - T(uA)||_F / N^{d/2}.
double egorov_residual(const Propagator& u, const symplectic::SymplecticMatrix& a, std::size_t sample_size,
                       std::uint64_t seed);

struct ScalarPower {
  cplx scalar;
  /// max |U^e - scalar I|
  double deviation;
};

/// U^e compared against a multiple of the identity.
ScalarPower power_scalar(const Propagator& u, std::uint64_t e);

}  // namespace catlab::quant
