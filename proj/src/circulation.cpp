#include "lapsep/circulation.hpp"

#include <algorithm>
#include <cmath>

#include "lapsep/matrix_classes.hpp"

namespace lapsep {

SimpleCircuit SimpleCircuit::canonical(std::vector<int> nodes) {
  if (nodes.empty()) throw Error(Errc::IndexOutOfRange, "empty circuit");
  auto smallest = std::min_element(nodes.begin(), nodes.end());
  std::rotate(nodes.begin(), smallest, nodes.end());
  return SimpleCircuit{std::move(nodes)};
}

RealMatrix circuit_to_matrix(const SimpleCircuit& c, int q) {
  RealMatrix m(q);
  int k = static_cast<int>(c.nodes.size());
  if (k == 0) throw Error(Errc::IndexOutOfRange, "empty circuit");
  for (int t = 0; t < k; ++t) {
    int from = c.nodes[t];
    int to = c.nodes[(t + 1) % k];
    if (from < 1 || from > q || to < 1 || to > q)
      throw Error(Errc::IndexOutOfRange, "circuit node exceeds dimension");
    m(from - 1, to - 1) = 1.0;
  }
  return m;
}

CircuitDecomposition decompose_circulation(const RealMatrix& b, double tol) {
  int q = b.size();
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      if (b(i, j) < -tol) throw Error(Errc::NegativeEntry, "circulation entry below zero");
  if (!is_line_sum_symmetric(b, tol))
    throw Error(Errc::NotLineSumSymmetric, "circulation row/column sums differ");

  RealMatrix res = b;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      if (std::abs(res(i, j)) <= tol) res(i, j) = 0.0;

  CircuitDecomposition out;
  out.source_dim = q;

  std::vector<int> visited_at(q, -1);  // walk position of first visit, -1 if unseen
  std::vector<int> walk;

  for (;;) {
    int start = -1;
    for (int i = 0; i < q && start < 0; ++i)
      for (int j = 0; j < q; ++j)
        if (res(i, j) > tol) {
          start = i;
          break;
        }
    if (start < 0) break;

    walk.clear();
    std::fill(visited_at.begin(), visited_at.end(), -1);
    int cur = start;
    visited_at[cur] = 0;
    walk.push_back(cur);

    for (;;) {
      int next = -1;
      for (int j = 0; j < q; ++j)
        if (res(cur, j) > tol) {
          next = j;
          break;
        }
      if (next < 0) {
        // Dust dead end: conservation held only within tol, so drop the
        // arc that led here and restart.
        if (walk.size() >= 2) {
          int prev = walk[walk.size() - 2];
          out.discarded_dust = std::max(out.discarded_dust, res(prev, cur));
          res(prev, cur) = 0.0;
        }
        break;
      }
      if (visited_at[next] >= 0) {
        int first = visited_at[next];
        std::vector<int> cycle(walk.begin() + first, walk.end());
        double alpha = res(walk.back(), next);
        for (size_t t = first; t + 1 < walk.size(); ++t)
          alpha = std::min(alpha, res(walk[t], walk[t + 1]));
        for (size_t t = first; t + 1 < walk.size(); ++t) res(walk[t], walk[t + 1]) -= alpha;
        res(walk.back(), next) -= alpha;
        for (int& node : cycle) ++node;  // to 1-based
        out.terms.push_back({alpha, SimpleCircuit::canonical(std::move(cycle))});
        break;
      }
      visited_at[next] = static_cast<int>(walk.size());
      walk.push_back(next);
      cur = next;
    }
  }

  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      out.discarded_dust = std::max(out.discarded_dust, std::abs(res(i, j)));
  return out;
}

}  // namespace lapsep
