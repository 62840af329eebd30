#pragma once

#include <vector>

#include "lapsep/linalg.hpp"
#include "lapsep/tensor_index.hpp"

namespace lapsep {

/// Undirected positively weighted edge on the p x q vertex grid, endpoints
/// distinct. Stored with flatten(a) < flatten(b).
struct GraphEdge {
  GridIndex a;
  GridIndex b;
  double weight = 1.0;

  bool operator==(const GraphEdge&) const = default;
};

/// Weighted graph on the full grid {1..p} x {1..q}; isolated vertices are
/// implicit. The edge list is canonical (endpoints ordered, list sorted by
/// flattened endpoint pair) so all derived outputs are deterministic.
class WeightedGraph {
 public:
  WeightedGraph(TensorShape shape, std::vector<GraphEdge> edges);

  TensorShape shape() const { return shape_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  int vertex_count() const { return shape_.dim(); }

  /// Set when construction merged duplicate endpoint pairs by summing
  /// their weights.
  bool merged_duplicates() const { return merged_duplicates_; }

 private:
  TensorShape shape_;
  std::vector<GraphEdge> edges_;
  bool merged_duplicates_ = false;
};

/// Symmetric nonnegative adjacency matrix of edge weights.
RealMatrix adjacency(const WeightedGraph& g);

/// (D - A) / trace(D): the weighted Laplacian normalized to unit trace.
/// Throws EmptyGraph when there are no edges.
RealMatrix laplacian_density(const WeightedGraph& g);

/// Reflects every edge {(i,j),(i',j')} to {(i,j'),(i',j)}: the graph whose
/// adjacency matrix is the partial transpose of adjacency(g).
WeightedGraph graph_partial_transpose(const WeightedGraph& g);

/// Weighted vertex degrees indexed by flattened position (0-based vector,
/// entry k-1 is vertex k).
std::vector<double> degrees(const WeightedGraph& g);

struct DegreeCriterionResult {
  bool equal = false;
  std::vector<int> differing_vertices;  // 1-based flattened indices
};

/// Compares vertex degrees of g and its partial transpose. Each vertex sum
/// accumulates its incident weights in ascending order, so degree multisets
/// that are merely permuted by the reflection compare exactly equal.
DegreeCriterionResult degree_criterion(const WeightedGraph& g);

}  // namespace lapsep
