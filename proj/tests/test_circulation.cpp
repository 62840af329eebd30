#include <doctest.h>

#include <cmath>

#include "lapsep/circulation.hpp"
#include "lapsep/matrix_classes.hpp"
#include "test_support.hpp"

using namespace lapsep;
using namespace lapsep::test;

namespace {

RealMatrix sum_of_terms(const CircuitDecomposition& d) {
  RealMatrix acc(d.source_dim);
  for (const CircuitTerm& t : d.terms) {
    RealMatrix cm = circuit_to_matrix(t.circuit, d.source_dim);
    cm *= t.alpha;
    acc += cm;
  }
  return acc;
}

int nnz(const RealMatrix& m, double tol) {
  int count = 0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j)
      if (std::abs(m(i, j)) > tol) ++count;
  return count;
}

RealMatrix random_circulation(int q, Rng& rng, int ncirc) {
  RealMatrix b(q);
  for (int c = 0; c < ncirc; ++c) {
    int k = rng.uniform_int(1, q);
    std::vector<int> pool(q);
    for (int i = 0; i < q; ++i) pool[i] = i + 1;
    rng.shuffle(pool);
    pool.resize(k);
    RealMatrix cm = circuit_to_matrix(SimpleCircuit::canonical(std::move(pool)), q);
    cm *= rng.uniform(0.1, 2.0);
    b += cm;
  }
  return b;
}

}  // namespace

TEST_SUITE("circulation") {

TEST_CASE("circuit matrices") {
  CHECK(circuit_to_matrix({{1}}, 2) == RealMatrix::from_rows({{1, 0}, {0, 0}}));
  CHECK(circuit_to_matrix({{1, 2}}, 2) == RealMatrix::from_rows({{0, 1}, {1, 0}}));
  CHECK(circuit_to_matrix({{1, 2, 3}}, 3) ==
        RealMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  CHECK_THROWS_AS(circuit_to_matrix({{1, 4}}, 3), Error);
}

TEST_CASE("canonical rotation keeps direction") {
  CHECK(SimpleCircuit::canonical({3, 1, 2}) == SimpleCircuit{{1, 2, 3}});
  CHECK(SimpleCircuit::canonical({2, 3, 1}) == SimpleCircuit{{1, 2, 3}});
  CHECK(SimpleCircuit::canonical({3, 2, 1}) == SimpleCircuit{{1, 3, 2}});
}

TEST_CASE("identity decomposes into self-loops") {
  auto d = decompose_circulation(RealMatrix::identity(2));
  REQUIRE(d.terms.size() == 2);
  CHECK(d.terms[0].alpha == 1.0);
  CHECK(d.terms[0].circuit == SimpleCircuit{{1}});
  CHECK(d.terms[1].alpha == 1.0);
  CHECK(d.terms[1].circuit == SimpleCircuit{{2}});
}

TEST_CASE("a single 2-cycle is recovered whole") {
  auto d = decompose_circulation(RealMatrix::from_rows({{0, 2}, {2, 0}}));
  REQUIRE(d.terms.size() == 1);
  CHECK(d.terms[0].alpha == 2.0);
  CHECK(d.terms[0].circuit == SimpleCircuit{{1, 2}});
}

TEST_CASE("the all-ones matrix splits into loop, cycle, loop") {
  RealMatrix b = RealMatrix::from_rows({{1, 1}, {1, 1}});
  auto d = decompose_circulation(b);
  REQUIRE(d.terms.size() == 3);
  CHECK(d.terms[0].circuit == SimpleCircuit{{1}});
  CHECK(d.terms[0].alpha == 1.0);
  CHECK(d.terms[1].circuit == SimpleCircuit{{1, 2}});
  CHECK(d.terms[1].alpha == 1.0);
  CHECK(d.terms[2].circuit == SimpleCircuit{{2}});
  CHECK(d.terms[2].alpha == 1.0);
  CHECK(max_abs_diff(sum_of_terms(d), b) == 0.0);
}

TEST_CASE("input validation") {
  RealMatrix neg(2);
  neg(0, 1) = neg(1, 0) = -0.5;
  CHECK_THROWS_AS(decompose_circulation(neg), Error);
  CHECK_THROWS_AS(decompose_circulation(RealMatrix::from_rows({{0, 1}, {0, 0}})), Error);
}

TEST_CASE("random circulations reconstruct within 1e-12") {
  Rng rng(301);
  for (int trial = 0; trial < 120; ++trial) {
    int q = rng.uniform_int(1, 12);
    RealMatrix b = random_circulation(q, rng, rng.uniform_int(1, 2 * q));
    auto d = decompose_circulation(b);

    double scale = 0.0;
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) scale = std::max(scale, std::abs(b(i, j)));
    CHECK(max_abs_diff(sum_of_terms(d), b) <= 1e-12 * std::max(1.0, scale));

    CHECK(static_cast<int>(d.terms.size()) <= nnz(b, 1e-9));

    for (const CircuitTerm& t : d.terms) {
      CHECK(t.alpha > 1e-9);
      std::vector<int> nodes = t.circuit.nodes;
      std::sort(nodes.begin(), nodes.end());
      CHECK(std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end());
      if (!t.circuit.nodes.empty()) {
        int smallest = *std::min_element(t.circuit.nodes.begin(), t.circuit.nodes.end());
        CHECK(t.circuit.nodes.front() == smallest);
      }
    }
  }
}

TEST_CASE("partial sums stay line-sum symmetric") {
  Rng rng(307);
  RealMatrix b = random_circulation(6, rng, 8);
  auto d = decompose_circulation(b);
  RealMatrix residual = b;
  for (const CircuitTerm& t : d.terms) {
    RealMatrix cm = circuit_to_matrix(t.circuit, 6);
    cm *= t.alpha;
    residual -= cm;
    CHECK(is_line_sum_symmetric(residual, 1e-9));
  }
}

TEST_CASE("a scaled circuit round-trips to itself") {
  Rng rng(311);
  for (int trial = 0; trial < 50; ++trial) {
    int q = rng.uniform_int(1, 8);
    int k = rng.uniform_int(1, q);
    std::vector<int> pool(q);
    for (int i = 0; i < q; ++i) pool[i] = i + 1;
    rng.shuffle(pool);
    pool.resize(k);
    SimpleCircuit c = SimpleCircuit::canonical(std::move(pool));
    double alpha = rng.uniform(0.1, 3.0);
    RealMatrix b = circuit_to_matrix(c, q);
    b *= alpha;
    auto d = decompose_circulation(b);
    REQUIRE(d.terms.size() == 1);
    CHECK(d.terms[0].alpha == alpha);
    CHECK(d.terms[0].circuit == c);
  }
}

TEST_CASE("near-zero entries are treated as zero") {
  RealMatrix b = RealMatrix::identity(3);
  b(0, 1) = 1e-12;
  b(1, 0) = 1e-12;
  auto d = decompose_circulation(b, 1e-9);
  CHECK(d.terms.size() == 3);
  CHECK(d.discarded_dust == 0.0);
}

}  // TEST_SUITE
