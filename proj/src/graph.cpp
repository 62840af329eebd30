#include "lapsep/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace lapsep {

WeightedGraph::WeightedGraph(TensorShape shape, std::vector<GraphEdge> edges) : shape_(shape) {
  if (shape.p < 1 || shape.q < 1)
    throw Error(Errc::ShapeMismatch, "grid factors must be >= 1");
  std::map<std::pair<int, int>, double> canon;
  for (const GraphEdge& e : edges) {
    int ka = flatten(shape, e.a);
    int kb = flatten(shape, e.b);
    if (ka == kb) throw Error(Errc::InvalidEdge, "edge endpoints coincide");
    if (!(e.weight > 0.0)) throw Error(Errc::InvalidEdge, "edge weight must be positive");
    auto key = std::minmax(ka, kb);
    auto [it, inserted] = canon.emplace(key, e.weight);
    if (!inserted) {
      it->second += e.weight;
      merged_duplicates_ = true;
    }
  }
  edges_.reserve(canon.size());
  for (const auto& [key, w] : canon)
    edges_.push_back({unflatten(shape, key.first), unflatten(shape, key.second), w});
}

RealMatrix adjacency(const WeightedGraph& g) {
  RealMatrix a(g.vertex_count());
  for (const GraphEdge& e : g.edges()) {
    int ka = flatten(g.shape(), e.a) - 1;
    int kb = flatten(g.shape(), e.b) - 1;
    a(ka, kb) += e.weight;
    a(kb, ka) += e.weight;
  }
  return a;
}

RealMatrix laplacian_density(const WeightedGraph& g) {
  if (g.edges().empty()) throw Error(Errc::EmptyGraph, "laplacian of an edgeless graph");
  std::vector<double> deg = degrees(g);
  double trace = 0.0;
  for (double d : deg) trace += d;
  RealMatrix adj = adjacency(g);
  RealMatrix l(g.vertex_count());
  for (int i = 0; i < l.size(); ++i)
    for (int j = 0; j < l.size(); ++j)
      l(i, j) = ((i == j ? deg[i] : 0.0) - adj(i, j)) / trace;
  return l;
}

WeightedGraph graph_partial_transpose(const WeightedGraph& g) {
  std::vector<GraphEdge> reflected;
  reflected.reserve(g.edges().size());
  for (const GraphEdge& e : g.edges())
    reflected.push_back({GridIndex{e.a.i, e.b.j}, GridIndex{e.b.i, e.a.j}, e.weight});
  return WeightedGraph(g.shape(), std::move(reflected));
}

namespace {

// Incident weights per vertex, each list sorted ascending before summation.
std::vector<double> sorted_degree_sums(const WeightedGraph& g) {
  std::vector<std::vector<double>> incident(g.vertex_count());
  for (const GraphEdge& e : g.edges()) {
    incident[flatten(g.shape(), e.a) - 1].push_back(e.weight);
    incident[flatten(g.shape(), e.b) - 1].push_back(e.weight);
  }
  std::vector<double> deg(g.vertex_count(), 0.0);
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::sort(incident[v].begin(), incident[v].end());
    for (double w : incident[v]) deg[v] += w;
  }
  return deg;
}

}  // namespace

std::vector<double> degrees(const WeightedGraph& g) {
  std::vector<double> deg(g.vertex_count(), 0.0);
  for (const GraphEdge& e : g.edges()) {
    deg[flatten(g.shape(), e.a) - 1] += e.weight;
    deg[flatten(g.shape(), e.b) - 1] += e.weight;
  }
  return deg;
}

DegreeCriterionResult degree_criterion(const WeightedGraph& g) {
  std::vector<double> before = sorted_degree_sums(g);
  std::vector<double> after = sorted_degree_sums(graph_partial_transpose(g));
  DegreeCriterionResult r;
  r.equal = true;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (before[v] != after[v]) {
      r.equal = false;
      r.differing_vertices.push_back(v + 1);
    }
  return r;
}

}  // namespace lapsep
