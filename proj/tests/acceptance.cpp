// Acceptance suite: exercises every stated requirement at its stated
// tolerance and prints one pass/fail line per criterion. Exit code is the
// number of failed criteria. argv[1] is the path of the CLI binary.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lapsep/circulation.hpp"
#include "lapsep/generate.hpp"
#include "lapsep/graph.hpp"
#include "lapsep/io.hpp"
#include "lapsep/matrix_classes.hpp"
#include "lapsep/separability.hpp"
#include "lapsep/tensor_index.hpp"

using namespace lapsep;
namespace fs = std::filesystem;

namespace {

struct Criterion {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (detail.empty()) detail = why;
  }
};

RealMatrix random_dyadic(int n, Rng& rng, bool symmetric) {
  RealMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = symmetric ? i : 0; j < n; ++j) {
      double v = static_cast<double>(rng.uniform_int(-(1 << 20), 1 << 20)) * 0x1.0p-20;
      m(i, j) = v;
      if (symmetric) m(j, i) = v;
    }
  return m;
}

// --- C1: partial-transpose algebra -----------------------------------------

Criterion c1_partial_transpose_algebra() {
  Criterion c;
  Rng rng(1001);
  for (int trial = 0; trial < 1000; ++trial) {
    TensorShape s{rng.uniform_int(1, 6), rng.uniform_int(1, 6)};
    bool symmetric = trial % 2 == 0;
    RealMatrix a = random_dyadic(s.dim(), rng, symmetric);
    RealMatrix pt = partial_transpose(a, s);

    if (!(partial_transpose(pt, s) == a)) c.fail("involution not exact");
    Reductions ra = reductions(a);
    Reductions rp = reductions(pt);
    if (ra.trace != rp.trace) c.fail("trace not preserved exactly");
    if (ra.total_sum != rp.total_sum) c.fail("total sum not preserved exactly");

    if (symmetric) {
      for (int k = 1; k <= s.dim(); ++k)
        for (int l = 1; l <= s.dim(); ++l)
          if (k != l && !is_entangled_position(s, k, l) && pt(k - 1, l - 1) != a(k - 1, l - 1))
            c.fail("non-entangled position moved");
    }
  }
  if (c.pass) c.detail = "1000 matrices, p,q <= 6";
  return c;
}

// --- C2: zero-row-sum equivalence -------------------------------------------

Criterion c2_equivalence() {
  Criterion c;
  Rng rng(2002);
  int matches = 0;
  for (int trial = 0; trial < 500; ++trial) {
    TensorShape s{2, rng.uniform_int(2, 6)};
    RealMatrix a;
    switch (trial % 3) {
      case 0: a = gen_separable(InstanceClass::S10, s, rng); break;
      case 1: a = laplacian_density(gen_entangled_star(s, rng)); break;
      default: a = gen_random_member(InstanceClass::S10, s, rng); break;
    }
    if (!classify_membership(a, 1e-9).in_S1_0) {
      c.fail("generator left S1^0");
      continue;
    }
    bool row_match = row_sums_match_after_pt(a, s, 1e-9).match;
    bool psd = is_psd(partial_transpose(a, s), 1e-9).is_psd;
    if (row_match != psd) c.fail("row-sum test disagrees with PSD test");
    if (row_match) ++matches;
  }
  if (c.pass)
    c.detail = "500 instances, " + std::to_string(matches) + " separable / " +
               std::to_string(500 - matches) + " entangled";
  return c;
}

// --- C3: constructive separability ------------------------------------------

Criterion c3_constructive(const std::vector<InstanceClass>& classes, MatrixClass klass,
                          Criterion c = {}) {
  Rng rng(klass == MatrixClass::S ? 3003 : 3503);
  for (int trial = 0; trial < 200; ++trial) {
    TensorShape s{rng.uniform_int(2, 4), rng.uniform_int(2, 5)};
    RealMatrix a = gen_separable(classes[trial % classes.size()], s, rng);
    if (!blockwise_line_sum_symmetric(a, s, 1e-9).all_lss) {
      c.fail("generated instance not blockwise line-sum symmetric");
      continue;
    }
    ProductDecomposition d = separable_decomposition(a, s, klass, 1e-9);
    VerifyResult vr = verify_decomposition(a, d, 1e-10);
    if (!vr.valid) c.fail("verification failed, error " + format_double(vr.max_error));
    if (std::abs(vr.weight_sum - 1.0) > 1e-12) c.fail("weights do not sum to one");
    for (const ProductTerm& t : d.terms) {
      if (!(t.weight > 0.0)) c.fail("nonpositive weight");
      double na = 0.0, nb = 0.0;
      for (const cplx& x : t.a) na += std::norm(x);
      for (const cplx& x : t.b) nb += std::norm(x);
      if (std::abs(std::sqrt(na) - 1.0) > 1e-12 || std::abs(std::sqrt(nb) - 1.0) > 1e-12)
        c.fail("factor vector not unit");
    }
  }
  return c;
}

// --- C4: circulation decomposition ------------------------------------------

Criterion c4_circulation() {
  Criterion c;
  Rng rng(4004);
  for (int trial = 0; trial < 500; ++trial) {
    int q = rng.uniform_int(1, 12);
    RealMatrix b(q);
    int ncirc = rng.uniform_int(1, 2 * q);
    for (int k = 0; k < ncirc; ++k) {
      std::vector<int> pool(q);
      for (int i = 0; i < q; ++i) pool[i] = i + 1;
      rng.shuffle(pool);
      pool.resize(rng.uniform_int(1, q));
      RealMatrix cm = circuit_to_matrix(SimpleCircuit::canonical(std::move(pool)), q);
      cm *= rng.uniform(0.1, 2.0);
      b += cm;
    }

    CircuitDecomposition d = decompose_circulation(b, 1e-9);

    RealMatrix recon(q);
    int nnz = 0;
    double bmax = 0.0;
    for (const CircuitTerm& t : d.terms) {
      RealMatrix cm = circuit_to_matrix(t.circuit, q);
      cm *= t.alpha;
      recon += cm;
      std::vector<int> nodes = t.circuit.nodes;
      std::sort(nodes.begin(), nodes.end());
      if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
        c.fail("circuit repeats a node");
    }
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) {
        bmax = std::max(bmax, std::abs(b(i, j)));
        if (std::abs(b(i, j)) > 1e-9) ++nnz;
      }
    double err = 0.0;
    for (int i = 0; i < q; ++i)
      for (int j = 0; j < q; ++j) err = std::max(err, std::abs(recon(i, j) - b(i, j)));
    if (err > 1e-12 * std::max(1.0, bmax)) c.fail("reconstruction error " + format_double(err));
    if (static_cast<int>(d.terms.size()) > nnz) c.fail("more terms than nonzero entries");
  }
  if (c.pass) c.detail = "500 circulations, q <= 12";
  return c;
}

// --- C5: stars of entangled edges are entangled ------------------------------

Criterion c5_star_conjecture() {
  Criterion c;
  Rng rng(5005);
  for (int trial = 0; trial < 50; ++trial) {
    TensorShape s{rng.uniform_int(2, 5), rng.uniform_int(2, 5)};
    WeightedGraph g = gen_entangled_star(s, rng);
    Verdict v = classify(laplacian_density(g), s, 1e-9);
    if (v.kind != VerdictKind::Entangled) c.fail("star classified " + std::string(verdict_kind_name(v.kind)));
    else if (!v.witness || !(v.witness->eigenvalue < 0.0)) c.fail("missing negative witness");
  }
  if (c.pass) c.detail = "50 star graphs, p,q <= 5";
  return c;
}

// --- C6: low-dimension cross-check -------------------------------------------

Criterion c6_low_dimension() {
  Criterion c;
  Rng rng(6006);
  for (int trial = 0; trial < 200; ++trial) {
    TensorShape s{2, trial % 2 ? 2 : 3};
    RealMatrix a;
    switch (trial % 3) {
      case 0: a = gen_random_member(InstanceClass::S10, s, rng); break;
      case 1: a = gen_separable(InstanceClass::S10, s, rng); break;
      default: a = laplacian_density(gen_entangled_star(s, rng)); break;
    }
    Verdict v = classify(a, s, 1e-9);
    bool constructive_separable = v.kind == VerdictKind::Separable;
    if (v.kind != VerdictKind::Separable && v.kind != VerdictKind::Entangled) {
      c.fail("unexpected verdict " + std::string(verdict_kind_name(v.kind)));
      continue;
    }
    if (constructive_separable && (v.rule != Rule::R4 && v.rule != Rule::R3))
      c.fail("separable verdict via unexpected rule");
    bool ppt = is_psd(partial_transpose(a, s), 1e-9).is_psd;
    if (constructive_separable != ppt) c.fail("constructive and PPT verdicts disagree");
  }
  if (c.pass) c.detail = "200 instances in 2x2 and 2x3";
  return c;
}

// --- C7: golden single entangled edge ----------------------------------------

Criterion c7_golden_edge() {
  Criterion c;
  WeightedGraph g({2, 2}, {{{1, 1}, {2, 2}, 1.0}});
  RealMatrix a = laplacian_density(g);
  std::optional<Witness> w = entanglement_witness(a, {2, 2}, 1e-9);
  if (!w) {
    c.fail("no witness");
    return c;
  }
  if (std::abs(w->eigenvalue + 0.5) > 1e-12)
    c.fail("eigenvalue " + format_double(w->eigenvalue));
  double s = 1.0 / std::sqrt(2.0);
  std::vector<cplx> expected{cplx(0, 0), cplx(s, 0), cplx(s, 0), cplx(0, 0)};
  cplx ov(0, 0);
  for (int i = 0; i < 4; ++i) ov += std::conj(expected[i]) * w->vector[i];
  if (std::abs(std::abs(ov) - 1.0) > 1e-9) c.fail("witness vector off (0,1,1,0)/sqrt(2)");
  if (c.pass) c.detail = "eigenvalue " + format_double(w->eigenvalue);
  return c;
}

// --- C8: graph/matrix consistency --------------------------------------------

Criterion c8_graph_consistency() {
  Criterion c;
  Rng rng(8008);
  for (int trial = 0; trial < 100; ++trial) {
    TensorShape s{rng.uniform_int(2, 5), rng.uniform_int(2, 5)};
    WeightedGraph g = trial % 4 ? gen_random_graph(s, rng) : gen_entangled_star(s, rng);
    if (!(adjacency(graph_partial_transpose(g)) == partial_transpose(adjacency(g), s)))
      c.fail("adjacency does not commute with the reflection");
    bool deg = degree_criterion(g).equal;
    bool row = row_sums_match_after_pt(laplacian_density(g), s, 1e-9).match;
    if (deg != row) c.fail("degree criterion disagrees with row-sum criterion");
  }
  if (c.pass) c.detail = "100 graphs";
  return c;
}

// --- C9: CLI and file-format round trips --------------------------------------

int run_cli_binary(const std::string& cli, const std::vector<std::string>& args) {
  std::string cmd = "'" + cli + "'";
  for (const std::string& a : args) cmd += " '" + a + "'";
  cmd += " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Criterion c9_cli_round_trips(const std::string& cli) {
  Criterion c;
  Rng rng(9009);
  fs::path dir = fs::temp_directory_path() / ("lapsep_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  int decomposed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    TensorShape s{rng.uniform_int(2, 3), rng.uniform_int(2, 4)};

    // Format round trips on freshly generated artifacts.
    RealMatrix m = gen_random_member(InstanceClass::V1, s, rng);
    MatrixFileContent mc = parse_matrix_file(write_matrix_file(m, s));
    if (!(mc.matrix == m) || !(mc.shape == s)) c.fail("matrix format round trip");

    WeightedGraph g = gen_random_graph(s, rng);
    WeightedGraph gback = parse_graph_file(write_graph_file(g));
    if (!(gback.edges() == g.edges()) || !(gback.shape() == g.shape()))
      c.fail("graph format round trip");

    RealMatrix sep = gen_separable(trial % 2 ? InstanceClass::S1 : InstanceClass::S10, s, rng);
    Verdict v = classify(sep, s, 1e-9);
    if (v.kind != VerdictKind::Separable) {
      c.fail("separable generator produced " + std::string(verdict_kind_name(v.kind)));
      continue;
    }
    ProductDecomposition dback =
        parse_decomposition_file(write_decomposition_file(*v.decomposition));
    if (dback.terms.size() != v.decomposition->terms.size())
      c.fail("decomposition format round trip");
    for (size_t t = 0; t < dback.terms.size(); ++t)
      if (dback.terms[t].weight != v.decomposition->terms[t].weight ||
          dback.terms[t].a != v.decomposition->terms[t].a ||
          dback.terms[t].b != v.decomposition->terms[t].b)
        c.fail("decomposition format round trip");

    // decompose -> verify through the real binary.
    fs::path input = dir / ("inst_" + std::to_string(trial) + ".mat");
    fs::path decomp = dir / ("inst_" + std::to_string(trial) + ".decomp");
    write_text_file(input.string(), write_matrix_file(sep, s));
    if (run_cli_binary(cli, {"decompose", input.string(), "-o", decomp.string()}) != 0)
      c.fail("cmd_decompose exit code");
    else if (run_cli_binary(cli, {"verify", input.string(), decomp.string()}) != 0)
      c.fail("cmd_verify exit code");
    else
      ++decomposed;
  }
  fs::remove_all(dir);
  if (c.pass) c.detail = std::to_string(decomposed) + " decompose/verify pairs through the CLI";
  return c;
}

struct Entry {
  std::string name;
  double budget_s;
  std::function<Criterion()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "./lapsep";

  std::vector<Entry> entries{
      {"C1 partial-transpose algebra", 5.0, c1_partial_transpose_algebra},
      {"C2 zero-row-sum equivalence (p=2)", 30.0, c2_equivalence},
      {"C3a constructive separability, class S", 60.0,
       [] { return c3_constructive({InstanceClass::S1, InstanceClass::S10}, MatrixClass::S); }},
      {"C3b constructive separability, class V", 60.0,
       [] { return c3_constructive({InstanceClass::V1}, MatrixClass::V); }},
      {"C4 circulation decomposition", 10.0, c4_circulation},
      {"C5 entangled-edge stars", 0.0, c5_star_conjecture},
      {"C6 low-dimension cross-check", 0.0, c6_low_dimension},
      {"C7 golden entangled edge", 0.0, c7_golden_edge},
      {"C8 graph/matrix consistency", 0.0, c8_graph_consistency},
      {"C9 CLI round trips", 0.0, [&cli] { return c9_cli_round_trips(cli); }},
  };

  int failures = 0;
  for (Entry& e : entries) {
    auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
      c = e.fn();
    } catch (const std::exception& ex) {
      c.pass = false;
      c.detail = std::string("exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.budget_s > 0.0 && secs > e.budget_s) {
      c.pass = false;
      c.detail += (c.detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::ostringstream line;
    line << (c.pass ? "[PASS] " : "[FAIL] ") << e.name;
    if (!c.detail.empty()) line << " — " << c.detail;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << secs << " s)";
    std::cout << line.str() << '\n';
    if (!c.pass) ++failures;
  }
  return failures;
}
