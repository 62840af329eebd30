#include <doctest.h>

#include <cmath>

#include "lapsep/linalg.hpp"
#include "test_support.hpp"

using namespace lapsep;
using namespace lapsep::test;

TEST_SUITE("linalg") {

TEST_CASE("jacobi on an already diagonal matrix") {
  auto sd = jacobi_eigh(RealMatrix::from_rows({{2, 0}, {0, 1}}));
  CHECK(sd.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sd.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(overlap({sd.eigenvectors(0, 0), sd.eigenvectors(1, 0)}, {0.0, 1.0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap({sd.eigenvectors(0, 1), sd.eigenvectors(1, 1)}, {1.0, 0.0}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("jacobi on the 2x2 exchange matrix") {
  auto sd = jacobi_eigh(RealMatrix::from_rows({{0, 1}, {1, 0}}));
  double s = 1.0 / std::sqrt(2.0);
  CHECK(sd.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sd.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(overlap({sd.eigenvectors(0, 0), sd.eigenvectors(1, 0)}, {s, -s}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(overlap({sd.eigenvectors(0, 1), sd.eigenvectors(1, 1)}, {s, s}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("jacobi on a complex Hermitian 2x2") {
  auto m = ComplexMatrix::from_rows({{cplx(0, 0), cplx(0, -1)}, {cplx(0, 1), cplx(0, 0)}});
  auto sd = jacobi_eigh(m);
  CHECK(sd.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sd.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_abs_diff(reconstruct(sd), m) < 1e-12);
}

TEST_CASE("jacobi rejects non-Hermitian input") {
  CHECK_THROWS_AS(jacobi_eigh(RealMatrix::from_rows({{0, 1}, {0, 0}})), Error);
  auto m = ComplexMatrix::from_rows({{cplx(0, 0.5), cplx(0, 0)}, {cplx(0, 0), cplx(1, 0)}});
  CHECK_THROWS_AS(jacobi_eigh(m), Error);
}

TEST_CASE("jacobi handles n = 1") {
  auto sd = jacobi_eigh(RealMatrix::from_rows({{3.5}}));
  CHECK(sd.eigenvalues[0] == doctest::Approx(3.5));
  CHECK(std::abs(sd.eigenvectors(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("random Hermitian: reconstruction, orthonormality, trace") {
  Rng rng(42);
  const double tol = 1e-12;
  for (int trial = 0; trial < 60; ++trial) {
    int n = rng.uniform_int(1, 12);
    ComplexMatrix m = random_hermitian(n, rng);
    auto sd = jacobi_eigh(m, tol);
    double scale = fro_norm(m);

    CHECK(max_abs_diff(reconstruct(sd), m) <= 10 * tol * std::max(1.0, scale));

    ComplexMatrix gram = matmul(sd.eigenvectors.adjoint(), sd.eigenvectors);
    CHECK(max_abs_diff(gram, ComplexMatrix::identity(n)) < 1e-12);

    double eig_sum = 0.0, trace = 0.0;
    for (double e : sd.eigenvalues) eig_sum += e;
    for (int i = 0; i < n; ++i) trace += m(i, i).real();
    CHECK(std::abs(eig_sum - trace) <= 1e-12 * std::max(1.0, scale));

    for (int k = 0; k + 1 < n; ++k) CHECK(sd.eigenvalues[k] <= sd.eigenvalues[k + 1]);
  }
}

TEST_CASE("is_psd on scaled identity") {
  auto r = is_psd(RealMatrix::identity(4) * 0.25);
  CHECK(r.is_psd);
  CHECK(r.min_eigenvalue == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("is_psd finds the negative middle block") {
  // Partial transpose of the one-entangled-edge Laplacian density matrix.
  auto m = RealMatrix::from_rows({{0.5, 0, 0, 0},
                                  {0, 0, -0.5, 0},
                                  {0, -0.5, 0, 0},
                                  {0, 0, 0, 0.5}});
  auto r = is_psd(m);
  CHECK_FALSE(r.is_psd);
  CHECK(r.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-13));
  double s = 1.0 / std::sqrt(2.0);
  CHECK(overlap(r.min_eigenvector, {0.0, s, s, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("is_psd accepts a singular PSD matrix") {
  auto r = is_psd(RealMatrix::from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
  CHECK(r.is_psd);
  CHECK(r.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("is_psd is monotone under adding c*I") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    int n = rng.uniform_int(1, 8);
    RealMatrix m = random_symmetric(n, rng);
    if (!is_psd(m).is_psd) {
      // Shift until PSD, then check that any further shift stays PSD.
      double lift = -jacobi_eigh(m).eigenvalues.front();
      for (int i = 0; i < n; ++i) m(i, i) += lift;
    }
    REQUIRE(is_psd(m).is_psd);
    double c = rng.uniform(0.0, 2.0);
    RealMatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) += c;
    CHECK(is_psd(shifted).is_psd);
  }
}

TEST_CASE("reductions of the identity") {
  auto r = reductions(RealMatrix::identity(3));
  CHECK(r.trace == 3.0);
  CHECK(r.total_sum == 3.0);
  for (double s : r.row_sums) CHECK(s == 1.0);
  CHECK(r.fro_norm == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("reductions of a zero-sum matrix") {
  auto r = reductions(RealMatrix::from_rows({{1, -1}, {-1, 1}}));
  CHECK(r.trace == 2.0);
  CHECK(r.total_sum == 0.0);
  CHECK(r.row_sums[0] == 0.0);
  CHECK(r.row_sums[1] == 0.0);
}

TEST_CASE("reductions distinguishes rows from columns") {
  auto r = reductions(RealMatrix::from_rows({{0, 1}, {0, 0}}));
  CHECK(r.row_sums == std::vector<double>{1.0, 0.0});
  CHECK(r.col_sums == std::vector<double>{0.0, 1.0});
}

}  // TEST_SUITE
