#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qesim {

using cplx = std::complex<double>;

// Dense row-major complex matrix. Dimensions stay small here (at most a few
// hundred), so clarity wins over BLAS-style tuning.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  std::span<const cplx> data() const { return a_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool is_hermitian(double tol) const;
  double max_abs_diff(const ComplexMatrix& o) const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEig {
  std::vector<double> values;   // ascending
  ComplexMatrix vectors;        // columns = orthonormal eigenvectors
};

// Cyclic complex Jacobi. Input must be Hermitian (enforced by symmetrizing
// round-off only, not validated here).
HermitianEig eig_hermitian(const ComplexMatrix& h);

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

// Operator square root of a positive semidefinite Hermitian matrix;
// eigenvalues in [-clamp_tol, 0) are clamped to zero.
ComplexMatrix sqrt_psd(const ComplexMatrix& h, double clamp_tol = 1e-9);

// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix& h);

}  // namespace qesim
