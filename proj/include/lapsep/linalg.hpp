#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "lapsep/errors.hpp"

namespace lapsep {

using cplx = std::complex<double>;

/// Dense square real matrix, row-major, immutable dimension.
/// Element access is 0-based; the 1-based index conventions of the tensor
/// and circuit APIs are translated at their boundaries.
class RealMatrix {
 public:
  RealMatrix() = default;
  explicit RealMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {
    if (n < 0) throw Error(Errc::ShapeMismatch, "negative dimension");
  }

  static RealMatrix identity(int n);
  static RealMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  int size() const { return n_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  bool is_symmetric(double tol) const;

  RealMatrix transposed() const;

  RealMatrix& operator+=(const RealMatrix& o);
  RealMatrix& operator-=(const RealMatrix& o);
  RealMatrix& operator*=(double s);

  friend RealMatrix operator+(RealMatrix a, const RealMatrix& b) { return a += b; }
  friend RealMatrix operator-(RealMatrix a, const RealMatrix& b) { return a -= b; }
  friend RealMatrix operator*(RealMatrix a, double s) { return a *= s; }
  friend RealMatrix operator*(double s, RealMatrix a) { return a *= s; }

  bool operator==(const RealMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Dense square complex matrix; same conventions as RealMatrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, cplx(0.0, 0.0)) {
    if (n < 0) throw Error(Errc::ShapeMismatch, "negative dimension");
  }
  explicit ComplexMatrix(const RealMatrix& m);

  static ComplexMatrix identity(int n);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  int size() const { return n_; }

  cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  cplx operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  bool is_hermitian(double tol) const;

  ComplexMatrix adjoint() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

 private:
  int n_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);

/// Eigenvalues ascending; eigenvectors(.,k) is the unit eigenvector paired
/// with eigenvalues[k].
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

struct Reductions {
  double trace = 0.0;
  std::vector<double> row_sums;
  std::vector<double> col_sums;
  double total_sum = 0.0;
  double fro_norm = 0.0;
};

struct ReductionsC {
  cplx trace{0.0, 0.0};
  std::vector<cplx> row_sums;
  std::vector<cplx> col_sums;
  cplx total_sum{0.0, 0.0};
  double fro_norm = 0.0;
};

Reductions reductions(const RealMatrix& m);
ReductionsC reductions(const ComplexMatrix& m);

double fro_norm(const ComplexMatrix& m);
double fro_norm(const RealMatrix& m);

/// Cyclic Jacobi diagonalization of a Hermitian matrix with complex Givens
/// rotations. Stops when the off-diagonal Frobenius mass drops below
/// tol * ||M||_F; throws NoConvergence past the sweep limit (100) and
/// NotHermitian if the input fails the Hermitian check at tol.
SpectralDecomposition jacobi_eigh(const ComplexMatrix& m, double tol = 1e-12);
SpectralDecomposition jacobi_eigh(const RealMatrix& m, double tol = 1e-12);

struct PsdResult {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  std::vector<cplx> min_eigenvector;
};

/// Positive-semidefinite test: true iff the smallest eigenvalue clears
/// -tol * max(1, ||M||_2), with an absolute floor of 1e-12 on the slack.
PsdResult is_psd(const ComplexMatrix& m, double tol = 1e-9);
PsdResult is_psd(const RealMatrix& m, double tol = 1e-9);

}  // namespace lapsep
