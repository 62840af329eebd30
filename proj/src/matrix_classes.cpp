#include "lapsep/matrix_classes.hpp"

#include <cassert>
#include <cmath>

namespace lapsep {

ClassReport classify_membership(const RealMatrix& a, double tol) {
  ClassReport r;
  r.tol_used = tol;
  int n = a.size();
  if (n < 1 || tol <= 0.0) return r;

  Reductions red = reductions(a);

  r.is_symmetric = a.is_symmetric(tol);

  r.nonneg_row_sums = true;
  r.zero_row_sums = true;
  for (double s : red.row_sums) {
    if (s < -tol) r.nonneg_row_sums = false;
    if (std::abs(s) > tol) r.zero_row_sums = false;
  }

  r.nonpos_off_diagonal = true;
  r.is_nonnegative = true;
  r.diag_dominant = true;
  for (int i = 0; i < n; ++i) {
    double off_abs = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double v = a(i, j);
      if (v > tol) r.nonpos_off_diagonal = false;
      if (v < -tol) r.is_nonnegative = false;
      off_abs += v;
    }
    if (a(i, i) < off_abs - tol) r.diag_dominant = false;
  }

  r.unit_trace = std::abs(red.trace - 1.0) <= tol;

  r.in_S = r.is_symmetric && r.nonneg_row_sums && r.nonpos_off_diagonal;
  r.in_S1 = r.in_S && r.unit_trace;
  r.in_S1_0 = r.in_S1 && r.zero_row_sums;
  r.in_V = r.is_symmetric && r.is_nonnegative && r.diag_dominant;
  r.in_V1 = r.in_V && r.unit_trace;

  if (r.is_symmetric && r.unit_trace) {
    try {
      r.is_valid_density = is_psd(a, tol).is_psd;
    } catch (const Error&) {
      r.is_valid_density = false;
    }
  }
  return r;
}

bool is_line_sum_symmetric(const RealMatrix& b, double tol) {
  Reductions red = reductions(b);
  for (int i = 0; i < b.size(); ++i)
    if (std::abs(red.row_sums[i] - red.col_sums[i]) > tol) return false;
  return true;
}

BlockLssResult blockwise_line_sum_symmetric(const RealMatrix& a, TensorShape shape, double tol) {
  int n = shape.dim();
  if (a.size() != n) throw Error(Errc::ShapeMismatch, "matrix dimension is not p*q");
  int q = shape.q;
  BlockLssResult res;
  for (int bu = 0; bu < shape.p; ++bu)
    for (int bv = 0; bv < shape.p; ++bv) {
      for (int i = 0; i < q; ++i) {
        double rs = 0.0, cs = 0.0;
        for (int j = 0; j < q; ++j) {
          rs += a(bu * q + i, bv * q + j);
          cs += a(bu * q + j, bv * q + i);
        }
        if (std::abs(rs - cs) > tol) {
          res.all_lss = false;
          res.failing_block = {bu + 1, bv + 1};
          return res;
        }
      }
    }
  res.all_lss = true;
  return res;
}

RowSumMatchResult row_sums_match_after_pt(const RealMatrix& a, TensorShape shape, double tol) {
  RealMatrix pt = partial_transpose(a, shape);
  Reductions ra = reductions(a);
  Reductions rp = reductions(pt);
  RowSumMatchResult res;
  for (int i = 0; i < a.size(); ++i)
    res.max_deviation = std::max(res.max_deviation, std::abs(ra.row_sums[i] - rp.row_sums[i]));
  res.match = res.max_deviation <= tol;
  return res;
}

bool block_tridiagonal_inference(const RealMatrix& a, TensorShape shape, double tol) {
  int n = shape.dim();
  if (a.size() != n) throw Error(Errc::ShapeMismatch, "matrix dimension is not p*q");
  int q = shape.q;
  for (int bu = 0; bu < shape.p; ++bu)
    for (int bv = 0; bv < shape.p; ++bv) {
      if (std::abs(bu - bv) <= 1) continue;
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
          if (std::abs(a(bu * q + i, bv * q + j)) > tol) return false;
    }
  bool match = row_sums_match_after_pt(a, shape, tol).match;
#ifndef NDEBUG
  if (match && a.is_symmetric(tol))
    assert(blockwise_line_sum_symmetric(a, shape, tol * n).all_lss);
#endif
  return match;
}

}  // namespace lapsep
