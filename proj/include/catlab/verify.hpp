#pragma once

// Congruence counts, exponential sums over full periods, the moment identity
// and the rate constants.

#include "catlab/arith.hpp"
#include "catlab/quantization.hpp"
#include "catlab/symplectic.hpp"

#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace catlab::verify {

using arith::Residue;
using Rational = boost::rational<long long>;
using Tuple = std::vector<std::uint64_t>;

/// Enumeration budget for T^s.
inline constexpr double kEnumerationBudget = 1e8;
/// Budget for the naive 2s-fold oracle (T^{2s}).
inline constexpr double kNaiveBudget = 1e6;
/// Budget for the p^{2dr} coefficient sweep.
inline constexpr double kMomentBudget = 1e7;

struct SpectralData {
  Residue p = 0;
  unsigned k = 0;
  /// Lifted eigenvalues mod p^k, ordered by their residues mod p.
  std::vector<Residue> lambda;
  std::vector<std::uint64_t> orders;
  std::vector<unsigned> gammas;
  /// gamma_{ij} = nu_p(rho_ij^{ord(rho_ij, p)} - 1), rho_ij = lambda_i / lambda_j; diagonal is 0.
  std::vector<std::vector<unsigned>> ratio_gammas;
  unsigned gamma_max = 0;

  int d() const { return static_cast<int>(lambda.size() / 2); }
};

/// Throws InputError unless p is a good prime for A.
SpectralData spectral_data(const symplectic::SymplecticMatrix& a, Residue p, unsigned k);

enum class CountMethod { naive, meet_in_the_middle };
std::string to_string(CountMethod m);

struct CongruenceCount {
  Residue N = 0;
  quant::HeisenbergIndex u;
  unsigned s = 0;
  std::uint64_t T = 0;
  std::uint64_t count = 0;
  CountMethod method = CountMethod::meet_in_the_middle;
};

/// Q_s(N; u): tuples 1 <= x_i, y_i <= T = ord(A, N) with
/// u (A^{x_1} + ... + A^{x_s} - A^{y_1} - ... - A^{y_s}) = 0 mod N.
CongruenceCount count_Q(const symplectic::SymplecticMatrix& a, const arith::PrimePowerModulus& ctx,
                        const quant::HeisenbergIndex& u, unsigned s,
                        CountMethod method = CountMethod::meet_in_the_middle);

/// Tuples 1 <= x_i, y_i <= T with sum lambda_i^{x_j} = sum lambda_i^{y_j} mod p^r for every i.
std::uint64_t count_lambda_system(const SpectralData& sd, unsigned r, unsigned s, std::uint64_t T,
                                  CountMethod method = CountMethod::meet_in_the_middle);

struct Solution {
  Tuple xs, ys;
};

/// Every solution counted by count_Q (meet-in-the-middle buckets).
std::vector<Solution> enumerate_Q_solutions(const symplectic::SymplecticMatrix& a,
                                            const arith::PrimePowerModulus& ctx, const quant::HeisenbergIndex& u,
                                            unsigned s);

struct KrReport {
  double max_coefficient = 0;
  double lhs = 0;
  double rhs = 0;
  std::uint64_t Q = 0;
  std::uint64_t T = 0;
  bool holds = false;
};

/// max |<T(u) psi, psi>|^{2s} over normalized eigenfunctions against N^d Q_s / T^{2s}.
/// The maximum over each eigenspace is the numerical radius of the compression.
KrReport kr_inequality_check(const symplectic::SymplecticMatrix& a, const arith::PrimePowerModulus& ctx,
                             const quant::HeisenbergIndex& u, unsigned s, std::uint64_t seed = 0);

struct ReductionReport {
  unsigned m = 0;
  /// p^{max(k - m, 0)}
  Residue modulus = 1;
  bool matrix_congruence = false;
  bool eigenvalue_congruence = false;
};

/// For a solution of the Q_s congruence at N = p^k: B = sum A^{x_i} - sum A^{y_i}
/// vanishes mod p^{k-m}, and so do the eigenvalue sums. Throws
/// InputError("not a solution") otherwise.
ReductionReport reduction_check(const symplectic::SymplecticMatrix& a, Residue p, unsigned k,
                                const quant::HeisenbergIndex& u, const Solution& solution);

/// Minimal period of x -> sum a_i lambda_i^x mod p^r.
std::uint64_t sequence_period(const SpectralData& sd, const std::vector<std::int64_t>& a, unsigned r);

struct ExpSumRecord {
  std::vector<std::int64_t> a;
  unsigned r = 0;
  std::uint64_t t_r = 0;
  std::uint64_t range_len = 0;
  std::complex<double> value;
  /// log |value| / log t_r (NaN when t_r = 1).
  double saving = 0;
};

/// sum_{x=1}^{range_len} e_{p^r}(a_1 lambda_1^x + ... + a_{2d} lambda_{2d}^x).
ExpSumRecord exp_sum(const SpectralData& sd, const std::vector<std::int64_t>& a, unsigned r,
                     std::uint64_t range_len);

/// Full-period saving exponent. Throws InputError("coefficient vector
/// divisible by p") when every a_i = 0 mod p.
ExpSumRecord saving_exponent(const SpectralData& sd, const std::vector<std::int64_t>& a, unsigned r);

/// Largest saving over all a mod p^r not divisible by p.
ExpSumRecord worst_saving(const SpectralData& sd, unsigned r);

struct MomentReport {
  unsigned r = 0;
  unsigned s = 0;
  std::uint64_t T = 0;
  double lhs = 0;
  std::uint64_t rhs = 0;
  /// W_j, j = 0..r: sums over the a with gcd(a, p^r) = p^{r-j}.
  std::vector<double> w;
  bool match = false;
};

MomentReport moment_identity(const SpectralData& sd, unsigned r, unsigned s, std::uint64_t T);

struct RateConstants {
  int d = 1;
  Rational kappa;
  long long s0 = 0;

  /// ((s - 1)/d + 1 - d) / (2s)
  Rational eta(long long s) const;
  /// d / (2s)
  Rational alt_exponent(long long s) const;
};

RateConstants rate_constants(int d);

}  // namespace catlab::verify
