#pragma once

// Eigenfunctions of U_N(A), matrix coefficients and the discrepancy.

#include "catlab/quantization.hpp"

#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace catlab::spectra {

using arith::Residue;
using linalg::CMatrix;
using linalg::cplx;
using quant::StateVector;

struct EigenDecomposition {
  /// Distinct eigenphases theta_j in [0, 1), ascending; eigenvalue e(theta_j).
  std::vector<double> eigenphases;
  /// Orthonormal basis of each eigenspace (normalized inner product).
  std::vector<std::vector<StateVector>> bases;
  /// ||U psi - e(theta) psi|| per basis vector.
  std::vector<std::vector<double>> residuals;

  std::size_t dimension() const;
  /// Basis of eigenspace j as unit l2 columns.
  CMatrix frame(std::size_t j) const;
  double max_residual() const;
};

/// Random-rotation reduction: diagonalize (e(t) U + e(-t) U^dagger) / 2 for a
/// random t, cluster the eigenvectors by the eigenphase of U, verify.
EigenDecomposition spectral_decomposition(const quant::Propagator& u, std::uint64_t seed = 0);

/// <T_N(u) psi, psi>; psi must be normalized to 1e-8.
cplx matrix_coefficient(const quant::HeisenbergIndex& u, const StateVector& psi);

struct DiscrepancyReport {
  Residue N = 0;
  unsigned k = 0;
  std::uint64_t T = 0;
  std::size_t dim = 0;
  double delta = 0;
  /// max over basis vectors of |<(Op - mean) psi, psi>|, at most delta.
  double per_vector_max = 0;
  /// (theta_j, spectral radius of the compression to eigenspace j).
  std::vector<std::pair<double, double>> per_eigenspace;
  std::string observable;
};

/// Delta from an existing decomposition.
DiscrepancyReport discrepancy(const EigenDecomposition& eig, const quant::Observable& f, Residue n, unsigned k,
                              std::uint64_t order);

/// Full pipeline: order, propagator, decomposition, compressions.
DiscrepancyReport discrepancy(const symplectic::SymplecticMatrix& a, const arith::PrimePowerModulus& ctx,
                              const quant::Observable& f, std::uint64_t seed = 0);

/// kappa_d = d / (2 (2d^2 - d + 1)) as a double.
double kappa(int d);

/// Least-squares slope of log delta against log N over rows with delta > 0;
/// empty with fewer than two such rows.
std::optional<double> fit_slope(const std::vector<DiscrepancyReport>& rows);

struct DecayTable {
  int d = 1;
  std::vector<DiscrepancyReport> rows;
  std::vector<double> kappa_bound;                  // N^{-kappa_d}
  std::vector<std::optional<double>> slope_so_far;  // fit over rows[0..i]
  std::optional<double> slope;
};

DecayTable decay_experiment(const symplectic::SymplecticMatrix& a, Residue p, unsigned k_min, unsigned k_max,
                            const quant::Observable& f, std::uint64_t seed = 0);

/// k,N,T,dim,delta,kappa_bound,slope_so_far
void write_csv(const DecayTable& table, std::ostream& out);

}  // namespace catlab::spectra
