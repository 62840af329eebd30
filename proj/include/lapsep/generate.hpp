#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lapsep/graph.hpp"
#include "lapsep/linalg.hpp"
#include "lapsep/tensor_index.hpp"

namespace lapsep {

/// Seedable generator with fixed value mappings so identical seeds produce
/// identical instances on every platform. The engine is std::mt19937_64
/// (fully specified by the standard); doubles come from the top 53 bits and
/// integers from rejection sampling, never from std distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Inclusive bounds, unbiased.
  int uniform_int(int lo, int hi);

  bool chance(double prob) { return uniform01() < prob; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_int(0, static_cast<int>(i) - 1)]);
  }

 private:
  std::mt19937_64 eng_;
};

enum class InstanceClass { S10, S1, V1 };

/// Unit-trace member of the class whose blocks are all line-sum symmetric:
/// off-diagonal blocks are sampled as positive circuit combinations and the
/// diagonal blocks absorb their row sums plus a random PSD remainder, so
/// the classifier always reaches a constructive separable verdict.
RealMatrix gen_separable(InstanceClass klass, TensorShape shape, Rng& rng);

/// Random weighted graph on the grid; at least one edge.
WeightedGraph gen_random_graph(TensorShape shape, Rng& rng);

/// Star of entangled edges around one random center vertex, optionally
/// padded with row/column-aligned edges elsewhere. Its Laplacian density
/// matrix is entangled. Requires p, q >= 2.
WeightedGraph gen_entangled_star(TensorShape shape, Rng& rng);

/// Random member of the class with no structural guarantees beyond
/// membership; the verdict may be anything.
RealMatrix gen_random_member(InstanceClass klass, TensorShape shape, Rng& rng);

}  // namespace lapsep
