#pragma once

// Dense complex matrices and the in-repo Hermitian eigensolvers.

#include <complex>
#include <cstddef>
#include <vector>

namespace catlab::linalg {

using cplx = std::complex<double>;

/// Row-major dense complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::vector<cplx>& data() { return a_; }
  const std::vector<cplx>& data() const { return a_; }

  std::vector<cplx> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<cplx>& v);

  CMatrix& operator+=(const CMatrix& b);
  CMatrix& operator-=(const CMatrix& b);
  CMatrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
std::vector<cplx> apply(const CMatrix& a, const std::vector<cplx>& x);

double frobenius_norm(const CMatrix& a);
double max_abs(const CMatrix& a);
/// max |(A A^dagger - I)_{ij}|
double unitarity_residual(const CMatrix& a);
/// max |A - A^dagger|
double hermiticity_residual(const CMatrix& a);

cplx dot(const std::vector<cplx>& x, const std::vector<cplx>& y);  // sum conj(x_i) y_i
double norm2(const std::vector<cplx>& x);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // columns, orthonormal
};

/// Cyclic complex Jacobi rotations.
HermitianEigen jacobi_eigen(const CMatrix& h);
/// Householder reduction to real tridiagonal form followed by implicit QL.
HermitianEigen householder_ql_eigen(const CMatrix& h);
/// Jacobi up to dimension 512, Householder + QL above.
HermitianEigen hermitian_eigen(const CMatrix& h);

/// Numerical radius max_{|x| = 1} |x^dagger B x| of a square matrix.
double numerical_radius(const CMatrix& b);

}  // namespace catlab::linalg
