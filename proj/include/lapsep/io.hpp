#pragma once

#include <iosfwd>
#include <string>

#include "lapsep/graph.hpp"
#include "lapsep/linalg.hpp"
#include "lapsep/separability.hpp"
#include "lapsep/tensor_index.hpp"

namespace lapsep {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

enum class FileKind { Matrix, Graph, Decomposition };

/// Inspects the first meaningful token: "graph", "decomp", or a number
/// (matrix header). Throws ParseError otherwise.
FileKind detect_file_kind(const std::string& text);

struct MatrixFileContent {
  TensorShape shape;
  RealMatrix matrix;
};

// Matrix format: header "n p q", then n rows of n decimals.
// Graph format: header "graph p q m", then m lines "i1 j1 i2 j2 w".
// Decomposition format: header "decomp p q t", then per term three lines:
// the weight, 2p reals (re/im interleaved of a), 2q reals (re/im of b).
// '#' starts a comment in every format.

MatrixFileContent parse_matrix_file(const std::string& text);
WeightedGraph parse_graph_file(const std::string& text);
ProductDecomposition parse_decomposition_file(const std::string& text);

std::string write_matrix_file(const RealMatrix& m, TensorShape shape);
std::string write_graph_file(const WeightedGraph& g);
std::string write_decomposition_file(const ProductDecomposition& d);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace lapsep
