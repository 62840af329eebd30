#pragma once

#include <vector>

#include "lapsep/linalg.hpp"

namespace lapsep {

/// Directed cycle over distinct 1-based indices; a single node denotes a
/// self-loop. Canonical form: rotated so the smallest node comes first,
/// traversal direction preserved.
struct SimpleCircuit {
  std::vector<int> nodes;

  /// Rotates the node sequence into canonical form.
  static SimpleCircuit canonical(std::vector<int> nodes);

  bool operator==(const SimpleCircuit&) const = default;
};

/// 0/1 matrix with ones on the consecutive arcs of the circuit and the arc
/// closing it; a self-loop yields a single diagonal one.
RealMatrix circuit_to_matrix(const SimpleCircuit& c, int q);

struct CircuitTerm {
  double alpha = 0.0;
  SimpleCircuit circuit;
};

struct CircuitDecomposition {
  int source_dim = 0;
  std::vector<CircuitTerm> terms;
  /// Largest residual entry discarded after extraction stopped.
  double discarded_dust = 0.0;
};

/// Writes a nonnegative line-sum-symmetric matrix as a positive combination
/// of simple circuit matrices. Entries with |value| <= tol are zeroed first.
///
/// Extraction walks the residual arc graph: start at the smallest node with
/// positive out-residual, repeatedly step to the smallest-index target whose
/// arc residual exceeds tol (the self-loop counts as a target equal to the
/// current node), and on the first node revisit extract the enclosed cycle
/// at its minimum arc residual. Each extraction zeroes at least one arc, so
/// the term count never exceeds the number of nonzero entries.
CircuitDecomposition decompose_circulation(const RealMatrix& b, double tol = 1e-9);

}  // namespace lapsep
