#include "lapsep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lapsep {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::InvalidEdge: return "InvalidEdge";
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::NotLineSumSymmetric: return "NotLineSumSymmetric";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::BadEmbedding: return "BadEmbedding";
    case Errc::NotInClass: return "NotInClass";
    case Errc::BlockNotLSS: return "BlockNotLSS";
    case Errc::NegativeBlockEntry: return "NegativeBlockEntry";
    case Errc::ResidualNotPSD: return "ResidualNotPSD";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

RealMatrix RealMatrix::identity(int n) {
  RealMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  int n = static_cast<int>(rows.size());
  RealMatrix m(n);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw Error(Errc::ShapeMismatch, "row length does not match dimension");
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool RealMatrix::is_symmetric(double tol) const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

RealMatrix RealMatrix::transposed() const {
  RealMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RealMatrix& RealMatrix::operator+=(const RealMatrix& o) {
  if (n_ != o.n_) throw Error(Errc::ShapeMismatch, "matrix addition");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

RealMatrix& RealMatrix::operator-=(const RealMatrix& o) {
  if (n_ != o.n_) throw Error(Errc::ShapeMismatch, "matrix subtraction");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

RealMatrix& RealMatrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

ComplexMatrix::ComplexMatrix(const RealMatrix& m) : ComplexMatrix(m.size()) {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) (*this)(i, j) = cplx(m(i, j), 0.0);
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = cplx(1.0, 0.0);
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  int n = static_cast<int>(rows.size());
  ComplexMatrix m(n);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw Error(Errc::ShapeMismatch, "row length does not match dimension");
    int j = 0;
    for (cplx v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  for (int i = 0; i < n_; ++i) {
    if (std::abs((*this)(i, i).imag()) > tol) return false;
    for (int j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  }
  return true;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (n_ != o.n_) throw Error(Errc::ShapeMismatch, "matrix addition");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (n_ != o.n_) throw Error(Errc::ShapeMismatch, "matrix subtraction");
  for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& v : a_) v *= s;
  return *this;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw Error(Errc::ShapeMismatch, "matmul");
  int n = a.size();
  ComplexMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
  if (a.size() != b.size()) throw Error(Errc::ShapeMismatch, "matmul");
  int n = a.size();
  RealMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Reductions reductions(const RealMatrix& m) {
  int n = m.size();
  Reductions r;
  r.row_sums.assign(n, 0.0);
  r.col_sums.assign(n, 0.0);
  double sq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = m(i, j);
      r.row_sums[i] += v;
      r.col_sums[j] += v;
      r.total_sum += v;
      sq += v * v;
      if (i == j) r.trace += v;
    }
  r.fro_norm = std::sqrt(sq);
  return r;
}

ReductionsC reductions(const ComplexMatrix& m) {
  int n = m.size();
  ReductionsC r;
  r.row_sums.assign(n, cplx(0.0, 0.0));
  r.col_sums.assign(n, cplx(0.0, 0.0));
  double sq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx v = m(i, j);
      r.row_sums[i] += v;
      r.col_sums[j] += v;
      r.total_sum += v;
      sq += std::norm(v);
      if (i == j) r.trace += v;
    }
  r.fro_norm = std::sqrt(sq);
  return r;
}

double fro_norm(const ComplexMatrix& m) {
  double sq = 0.0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) sq += std::norm(m(i, j));
  return std::sqrt(sq);
}

double fro_norm(const RealMatrix& m) {
  double sq = 0.0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) sq += m(i, j) * m(i, j);
  return std::sqrt(sq);
}

namespace {

constexpr int kMaxSweeps = 100;

double offdiag_fro(const ComplexMatrix& m) {
  double sq = 0.0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (i != j) sq += std::norm(m(i, j));
  return std::sqrt(sq);
}

// One rotation in the (kp,kq) plane annihilating m(kp,kq). The plane
// rotation is J = W*G with W = diag(e^{i phi}, 1) absorbing the phase of
// the pivot and G the real Givens rotation of the phase-free 2x2 problem.
void rotate(ComplexMatrix& m, ComplexMatrix& v, int kp, int kq) {
  int n = m.size();
  cplx alpha = m(kp, kq);
  double apq = std::abs(alpha);
  if (apq == 0.0) return;
  cplx phase = alpha / apq;  // e^{i phi}

  double app = m(kp, kp).real();
  double aqq = m(kq, kq).real();
  double tau = (aqq - app) / (2.0 * apq);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = t * c;

  cplx u = c * phase;   // J(kp,kp)
  cplx w = s * phase;   // J(kp,kq); J(kq,kp) = -s, J(kq,kq) = c

  double shift = t * apq;
  double new_pp = app - shift;
  double new_qq = aqq + shift;

  for (int r = 0; r < n; ++r) {
    if (r == kp || r == kq) continue;
    cplx mrp = m(r, kp);
    cplx mrq = m(r, kq);
    m(r, kp) = u * mrp - s * mrq;
    m(r, kq) = w * mrp + c * mrq;
    m(kp, r) = std::conj(m(r, kp));
    m(kq, r) = std::conj(m(r, kq));
  }
  m(kp, kp) = cplx(new_pp, 0.0);
  m(kq, kq) = cplx(new_qq, 0.0);
  m(kp, kq) = cplx(0.0, 0.0);
  m(kq, kp) = cplx(0.0, 0.0);

  for (int r = 0; r < n; ++r) {
    cplx vrp = v(r, kp);
    cplx vrq = v(r, kq);
    v(r, kp) = u * vrp - s * vrq;
    v(r, kq) = w * vrp + c * vrq;
  }
}

}  // namespace

SpectralDecomposition jacobi_eigh(const ComplexMatrix& m, double tol) {
  if (tol <= 0.0) throw Error(Errc::ShapeMismatch, "tolerance must be positive");
  int n = m.size();
  if (n < 1) throw Error(Errc::ShapeMismatch, "empty matrix");
  double scale = fro_norm(m);
  if (!m.is_hermitian(tol * std::max(1.0, scale)))
    throw Error(Errc::NotHermitian, "jacobi_eigh input");

  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = cplx(m(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      cplx h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = h;
      a(j, i) = std::conj(h);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double target = tol * scale;
  if (scale > 0.0) {
    double pivot_floor = target / (2.0 * n);
    int sweep = 0;
    while (offdiag_fro(a) > target) {
      if (++sweep > kMaxSweeps)
        throw Error(Errc::NoConvergence, "jacobi sweep limit exceeded");
      for (int kp = 0; kp < n - 1; ++kp)
        for (int kq = kp + 1; kq < n; ++kq)
          if (std::abs(a(kp, kq)) > pivot_floor) rotate(a, v, kp, kq);
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (int r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

SpectralDecomposition jacobi_eigh(const RealMatrix& m, double tol) {
  return jacobi_eigh(ComplexMatrix(m), tol);
}

PsdResult is_psd(const ComplexMatrix& m, double tol) {
  if (tol <= 0.0) throw Error(Errc::ShapeMismatch, "tolerance must be positive");
  double scale = fro_norm(m);
  if (!m.is_hermitian(tol * std::max(1.0, scale)))
    throw Error(Errc::NotHermitian, "is_psd input");

  // Symmetrize before diagonalizing so the eigensolver's own (tighter)
  // Hermitian check cannot reject inputs admitted at this tolerance.
  int n = m.size();
  ComplexMatrix h(n);
  for (int i = 0; i < n; ++i) {
    h(i, i) = cplx(m(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      cplx e = 0.5 * (m(i, j) + std::conj(m(j, i)));
      h(i, j) = e;
      h(j, i) = std::conj(e);
    }
  }

  SpectralDecomposition sd = jacobi_eigh(h, 1e-12);
  PsdResult r;
  r.min_eigenvalue = sd.eigenvalues.front();
  r.min_eigenvector.resize(n);
  for (int i = 0; i < n; ++i) r.min_eigenvector[i] = sd.eigenvectors(i, 0);
  double spectral = std::max(std::abs(sd.eigenvalues.front()), std::abs(sd.eigenvalues.back()));
  double slack = std::max(tol * std::max(1.0, spectral), 1e-12);
  r.is_psd = r.min_eigenvalue >= -slack;
  return r;
}

PsdResult is_psd(const RealMatrix& m, double tol) {
  return is_psd(ComplexMatrix(m), tol);
}

}  // namespace lapsep
