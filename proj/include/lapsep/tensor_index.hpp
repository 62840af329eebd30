#pragma once

#include "lapsep/linalg.hpp"

namespace lapsep {

/// Bipartite dimensions (p, q) with n = p*q. The flattened index follows
/// the canonical bijection f(i,j) = (i-1)q + j over 1-based grid pairs.
struct TensorShape {
  int p = 1;
  int q = 1;

  int dim() const { return p * q; }
  bool operator==(const TensorShape&) const = default;
};

/// 1-based grid coordinate: i in 1..p, j in 1..q.
struct GridIndex {
  int i = 1;
  int j = 1;

  bool operator==(const GridIndex&) const = default;
};

/// f(i,j) = (i-1)q + j, returning k in 1..n.
int flatten(TensorShape shape, GridIndex g);

/// Inverse of flatten; k in 1..n.
GridIndex unflatten(TensorShape shape, int k);

/// Blockwise transpose of the q x q blocks: a^{pT}_{(i,j)(k,l)} = a_{(i,l)(k,j)}.
RealMatrix partial_transpose(const RealMatrix& a, TensorShape shape);
ComplexMatrix partial_transpose(const ComplexMatrix& a, TensorShape shape);

/// True iff positions k != l unflatten to grid pairs differing in both
/// coordinates. Such off-diagonal positions are the only ones the partial
/// transpose moves.
bool is_entangled_position(TensorShape shape, int k, int l);

}  // namespace lapsep
