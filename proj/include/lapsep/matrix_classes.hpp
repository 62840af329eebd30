#pragma once

#include <optional>
#include <utility>

#include "lapsep/linalg.hpp"
#include "lapsep/tensor_index.hpp"

namespace lapsep {

/// Membership flags for the matrix classes the classifier dispatches on.
/// S: symmetric, nonnegative row sums, nonpositive off-diagonal entries
/// (generalized Laplacians). V: symmetric nonnegative diagonally dominant.
/// Subscript 1 adds unit trace, superscript 0 zero row sums.
struct ClassReport {
  bool is_symmetric = false;
  bool nonneg_row_sums = false;
  bool nonpos_off_diagonal = false;
  bool in_S = false;
  bool unit_trace = false;
  bool in_S1 = false;
  bool zero_row_sums = false;
  bool in_S1_0 = false;
  bool is_nonnegative = false;
  bool diag_dominant = false;
  bool in_V = false;
  bool in_V1 = false;
  bool is_valid_density = false;
  double tol_used = 0.0;
};

/// Computes every membership flag; never throws, failed preconditions just
/// yield false flags. |x| <= tol is treated as zero throughout.
ClassReport classify_membership(const RealMatrix& a, double tol = 1e-9);

/// True iff every row sum equals the matching column sum within tol.
bool is_line_sum_symmetric(const RealMatrix& b, double tol = 1e-9);

struct BlockLssResult {
  bool all_lss = false;
  std::optional<std::pair<int, int>> failing_block;  // 1-based (row block, col block)
};

/// Checks every q x q block of the p x p block partition.
BlockLssResult blockwise_line_sum_symmetric(const RealMatrix& a, TensorShape shape,
                                            double tol = 1e-9);

struct RowSumMatchResult {
  bool match = false;
  double max_deviation = 0.0;
};

/// Compares row sums of the partial transpose against row sums of a.
RowSumMatchResult row_sums_match_after_pt(const RealMatrix& a, TensorShape shape,
                                          double tol = 1e-9);

/// True iff a is block tridiagonal and its partial transpose preserves row
/// sums. For symmetric block-tridiagonal input this already forces every
/// block to be line-sum symmetric.
bool block_tridiagonal_inference(const RealMatrix& a, TensorShape shape, double tol = 1e-9);

}  // namespace lapsep
