#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lapsep/circulation.hpp"
#include "lapsep/linalg.hpp"
#include "lapsep/matrix_classes.hpp"
#include "lapsep/tensor_index.hpp"

namespace lapsep {

/// One rank-one product term: weight * (a a^dag) tensor (b b^dag) with unit
/// vectors a (length p) and b (length q).
struct ProductTerm {
  double weight = 0.0;
  std::vector<cplx> a;
  std::vector<cplx> b;
};

/// Certificate of separability. Term order is deterministic: block-pair
/// terms first (pairs lexicographic, circuits in extraction order), then
/// residual diagonal-block terms (blocks ascending, eigenvalues ascending).
struct ProductDecomposition {
  TensorShape shape;
  std::vector<ProductTerm> terms;
};

/// Certificate of entanglement: a negative eigenpair of the partial
/// transpose.
struct Witness {
  double eigenvalue = 0.0;
  std::vector<cplx> vector;
};

enum class MatrixClass { S, V };

/// Decision rules reported by the classifier.
///   R1  partial transpose has a negative eigenvalue
///   R2  zero row sums but the partial transpose row sums differ
///   R3  zero-row-sum equivalence (reserved; the constructive path reports R4)
///   R4  p = 2 constructive decomposition via circulation blocks
///   R5  p > 2 constructive decomposition, blocks line-sum symmetric
///   R6  p > 2 constructive decomposition via block-tridiagonal inference
///   R7  positive partial transpose is sufficient in 2x2 and 2x3
enum class Rule { None, R1, R2, R3, R4, R5, R6, R7 };

const char* rule_name(Rule r);

enum class VerdictKind { Separable, SeparableNonConstructive, Entangled, Unknown, Invalid };

const char* verdict_kind_name(VerdictKind k);

struct Diagnostics {
  double pt_min_eigenvalue = 0.0;
  double row_sum_deviation = 0.0;
  double reconstruction_error = 0.0;
  double weight_sum = 0.0;
  std::string note;
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  Rule rule = Rule::None;
  std::optional<ProductDecomposition> decomposition;
  std::optional<Witness> witness;
  std::string reason;
  ClassReport membership;
  Diagnostics diagnostics;
};

/// Placement of an r x r unitary inside the (row_block, col_block) pair of
/// blocks: support lists the r distinct 1-based column indices the unitary
/// acts on.
struct BlockEmbedding {
  int row_block = 1;
  int col_block = 2;
  std::vector<int> support;
};

/// Product terms reconstructing scale * [[D, F],[F^dag, D]] placed at the
/// given block pair, where F embeds the unitary on its support and D is the
/// support projector. One term per eigenvalue e^{i phi} of the unitary: the
/// p-side factor carries e^{i phi/2} and e^{-i phi/2} on the two block
/// slots, the q-side factor is the eigenvector. Eigenpairs are obtained by
/// diagonalizing the Hermitian part and refining degenerate subspaces with
/// the skew part.
std::vector<ProductTerm> unitary_block_terms(const ComplexMatrix& u, const BlockEmbedding& embed,
                                             TensorShape shape, double scale);

/// Same construction specialized to sign * (cyclic permutation of the
/// circuit), using the closed-form discrete-Fourier eigenpairs of a k-cycle
/// instead of a numeric eigensolve. sign is -1 for Laplacian-type blocks and
/// +1 for nonnegative blocks. Emits k terms of weight 2 * alpha.
std::vector<ProductTerm> circuit_block_terms(const SimpleCircuit& c, double alpha, int row_block,
                                             int col_block, int sign, TensorShape shape);

/// Constructive product decomposition for a unit-trace class-S (resp. V)
/// matrix whose blocks are line-sum symmetric. Off-diagonal block pairs are
/// circuit-decomposed and turned into paired terms; what the circuits leave
/// on each diagonal block is positive semidefinite within the class and is
/// emitted as eigenvalue-weighted pure terms.
ProductDecomposition separable_decomposition(const RealMatrix& a, TensorShape shape,
                                             MatrixClass klass, double tol = 1e-9);

struct VerifyResult {
  bool valid = false;
  double max_error = 0.0;
  double weight_sum = 0.0;
};

/// Recomputes the sum of product terms and compares it entrywise against a.
/// Valid requires max error <= tol, positive weights summing to 1 within
/// 1e-12, and unit factor vectors within 1e-12.
VerifyResult verify_decomposition(const RealMatrix& a, const ProductDecomposition& d, double tol);

/// Minimum eigenpair of the partial transpose when its eigenvalue is
/// negative beyond tolerance; absent otherwise.
std::optional<Witness> entanglement_witness(const RealMatrix& a, TensorShape shape,
                                            double tol = 1e-9);

/// Full decision procedure. Never throws: invalid inputs yield an Invalid
/// verdict, and every Separable verdict carries a decomposition that was
/// re-verified at 1e-10 before being returned.
Verdict classify(const RealMatrix& a, TensorShape shape, double tol = 1e-9);

}  // namespace lapsep
