#include "lapsep/generate.hpp"

#include <algorithm>

#include "lapsep/circulation.hpp"

namespace lapsep {

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw Error(Errc::IndexOutOfRange, "empty integer range");
  uint64_t range = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return lo + static_cast<int>(x % range);
}

namespace {

// Zero-row-sum Laplacian-style piece added to a diagonal block (class S).
void add_laplacian_piece(RealMatrix& a, int offset, int q, Rng& rng, bool force_edge) {
  bool added = false;
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if (rng.chance(0.4)) {
        double w = rng.uniform(0.2, 1.5);
        a(offset + i, offset + i) += w;
        a(offset + j, offset + j) += w;
        a(offset + i, offset + j) -= w;
        a(offset + j, offset + i) -= w;
        added = true;
      }
  if (force_edge && !added && q >= 2) {
    int i = rng.uniform_int(0, q - 2);
    double w = rng.uniform(0.2, 1.5);
    a(offset + i, offset + i) += w;
    a(offset + i + 1, offset + i + 1) += w;
    a(offset + i, offset + i + 1) -= w;
    a(offset + i + 1, offset + i) -= w;
  }
}

// Symmetric nonnegative diagonally dominant piece (class V).
void add_dominant_piece(RealMatrix& a, int offset, int q, Rng& rng) {
  std::vector<double> off_sum(q, 0.0);
  for (int i = 0; i < q; ++i)
    for (int j = i + 1; j < q; ++j)
      if (rng.chance(0.4)) {
        double w = rng.uniform(0.2, 1.5);
        a(offset + i, offset + j) += w;
        a(offset + j, offset + i) += w;
        off_sum[i] += w;
        off_sum[j] += w;
      }
  for (int i = 0; i < q; ++i)
    a(offset + i, offset + i) += off_sum[i] + rng.uniform(0.05, 0.6);
}

SimpleCircuit random_circuit(int q, Rng& rng) {
  int k = rng.uniform_int(1, q);
  std::vector<int> pool(q);
  for (int i = 0; i < q; ++i) pool[i] = i + 1;
  rng.shuffle(pool);
  pool.resize(k);
  return SimpleCircuit::canonical(std::move(pool));
}

}  // namespace

RealMatrix gen_separable(InstanceClass klass, TensorShape shape, Rng& rng) {
  int p = shape.p, q = shape.q, n = shape.dim();
  if (klass == InstanceClass::S10 && p == 1 && q == 1)
    throw Error(Errc::ShapeMismatch, "no 1x1 matrix has both unit trace and zero row sums");

  double sign = (klass == InstanceClass::V1) ? 1.0 : -1.0;
  RealMatrix a(n);

  for (int u = 0; u < p; ++u)
    for (int v = u + 1; v < p; ++v) {
      // With q = 1 an S10 instance has no other source of trace, so the
      // first pair always gets a circuit.
      bool force = klass == InstanceClass::S10 && q == 1 && u == 0 && v == 1;
      if (!force && !rng.chance(0.7)) continue;
      int ncirc = rng.uniform_int(1, 3);
      RealMatrix b(q);
      for (int c = 0; c < ncirc; ++c) {
        SimpleCircuit circ = random_circuit(q, rng);
        double alpha = rng.uniform(0.2, 1.5);
        RealMatrix cm = circuit_to_matrix(circ, q);
        cm *= alpha;
        b += cm;
      }
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
          a(u * q + i, v * q + j) = sign * b(i, j);
          a(v * q + j, u * q + i) = sign * b(i, j);
        }
    }

  // Diagonal blocks: absorb the off-block row/column sums, then add a PSD
  // remainder in the class.
  for (int u = 0; u < p; ++u) {
    for (int i = 0; i < q; ++i) {
      double mass = 0.0;
      for (int v = 0; v < p; ++v) {
        if (v == u) continue;
        for (int j = 0; j < q; ++j) mass += std::abs(a(u * q + i, v * q + j));
      }
      a(u * q + i, u * q + i) += mass;
    }
    switch (klass) {
      case InstanceClass::S10:
        add_laplacian_piece(a, u * q, q, rng, p == 1);
        break;
      case InstanceClass::S1:
        add_laplacian_piece(a, u * q, q, rng, false);
        for (int i = 0; i < q; ++i)
          if (rng.chance(0.5)) a(u * q + i, u * q + i) += rng.uniform(0.05, 0.5);
        if (u == 0) a(0, 0) += 0.1;  // keeps the trace positive for any draw
        break;
      case InstanceClass::V1:
        add_dominant_piece(a, u * q, q, rng);
        break;
    }
  }

  double trace = 0.0;
  for (int i = 0; i < n; ++i) trace += a(i, i);
  if (!(trace > 0.0)) {
    // Only reachable for S10 with every random block empty: fall back to
    // one guaranteed circulation pair.
    if (p >= 2) {
      a(0, q) = a(q, 0) = -1.0;
      a(0, 0) += 1.0;
      a(q, q) += 1.0;
      trace = 2.0;
    } else {
      throw Error(Errc::EmptyGraph, "degenerate separable instance");
    }
  }
  a *= 1.0 / trace;
  return a;
}

WeightedGraph gen_random_graph(TensorShape shape, Rng& rng) {
  int n = shape.dim();
  if (n < 2) throw Error(Errc::ShapeMismatch, "graph needs at least two vertices");
  std::vector<GraphEdge> edges;
  double prob = std::min(0.5, 3.0 / n);
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l)
      if (rng.chance(prob))
        edges.push_back({unflatten(shape, k), unflatten(shape, l), rng.uniform(0.2, 2.0)});
  if (edges.empty()) {
    int k = rng.uniform_int(1, n - 1);
    edges.push_back({unflatten(shape, k), unflatten(shape, k + 1), rng.uniform(0.2, 2.0)});
  }
  return WeightedGraph(shape, std::move(edges));
}

WeightedGraph gen_entangled_star(TensorShape shape, Rng& rng) {
  int p = shape.p, q = shape.q;
  if (p < 2 || q < 2)
    throw Error(Errc::ShapeMismatch, "entangled edges need p >= 2 and q >= 2");
  GridIndex center{rng.uniform_int(1, p), rng.uniform_int(1, q)};

  std::vector<GridIndex> candidates;
  for (int i = 1; i <= p; ++i)
    for (int j = 1; j <= q; ++j)
      if (i != center.i && j != center.j) candidates.push_back({i, j});
  rng.shuffle(candidates);
  int k = rng.uniform_int(1, std::min<int>(4, static_cast<int>(candidates.size())));

  std::vector<GraphEdge> edges;
  for (int t = 0; t < k; ++t) edges.push_back({center, candidates[t], rng.uniform(0.2, 2.0)});

  // Optional padding with fixed (row- or column-aligned) edges; those are
  // invariant under the reflection and keep all entangled edges on the
  // center.
  int extra = rng.uniform_int(0, 2);
  for (int t = 0; t < extra; ++t) {
    GridIndex x{rng.uniform_int(1, p), rng.uniform_int(1, q)};
    GridIndex y = x;
    if (rng.chance(0.5) && q >= 2) {
      y.j = (x.j % q) + 1;
    } else if (p >= 2) {
      y.i = (x.i % p) + 1;
    } else {
      continue;
    }
    if (flatten(shape, x) == flatten(shape, y)) continue;
    edges.push_back({x, y, rng.uniform(0.2, 2.0)});
  }
  return WeightedGraph(shape, std::move(edges));
}

RealMatrix gen_random_member(InstanceClass klass, TensorShape shape, Rng& rng) {
  int n = shape.dim();
  switch (klass) {
    case InstanceClass::S10:
      return laplacian_density(gen_random_graph(shape, rng));
    case InstanceClass::S1: {
      RealMatrix a(n);
      add_laplacian_piece(a, 0, n, rng, true);
      for (int i = 0; i < n; ++i)
        if (rng.chance(0.6)) a(i, i) += rng.uniform(0.05, 0.8);
      a(0, 0) += 0.1;
      double trace = 0.0;
      for (int i = 0; i < n; ++i) trace += a(i, i);
      a *= 1.0 / trace;
      return a;
    }
    case InstanceClass::V1: {
      RealMatrix a(n);
      add_dominant_piece(a, 0, n, rng);
      double trace = 0.0;
      for (int i = 0; i < n; ++i) trace += a(i, i);
      a *= 1.0 / trace;
      return a;
    }
  }
  throw Error(Errc::ShapeMismatch, "unreachable");
}

}  // namespace lapsep
