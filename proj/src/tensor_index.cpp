#include "lapsep/tensor_index.hpp"

namespace lapsep {

namespace {

void check_shape(TensorShape shape) {
  if (shape.p < 1 || shape.q < 1)
    throw Error(Errc::ShapeMismatch, "tensor shape factors must be >= 1");
}

template <typename M>
M partial_transpose_impl(const M& a, TensorShape shape) {
  check_shape(shape);
  int n = shape.dim();
  if (a.size() != n) throw Error(Errc::ShapeMismatch, "matrix dimension is not p*q");
  M out(n);
  int q = shape.q;
  for (int bu = 0; bu < shape.p; ++bu)
    for (int bv = 0; bv < shape.p; ++bv)
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
          out(bu * q + i, bv * q + j) = a(bu * q + j, bv * q + i);
  return out;
}

}  // namespace

int flatten(TensorShape shape, GridIndex g) {
  check_shape(shape);
  if (g.i < 1 || g.i > shape.p || g.j < 1 || g.j > shape.q)
    throw Error(Errc::IndexOutOfRange, "grid index (" + std::to_string(g.i) + "," +
                                           std::to_string(g.j) + ")");
  return (g.i - 1) * shape.q + g.j;
}

GridIndex unflatten(TensorShape shape, int k) {
  check_shape(shape);
  if (k < 1 || k > shape.dim())
    throw Error(Errc::IndexOutOfRange, "flattened index " + std::to_string(k));
  return GridIndex{(k - 1) / shape.q + 1, (k - 1) % shape.q + 1};
}

RealMatrix partial_transpose(const RealMatrix& a, TensorShape shape) {
  return partial_transpose_impl(a, shape);
}

ComplexMatrix partial_transpose(const ComplexMatrix& a, TensorShape shape) {
  return partial_transpose_impl(a, shape);
}

bool is_entangled_position(TensorShape shape, int k, int l) {
  if (k == l) throw Error(Errc::IndexOutOfRange, "positions must differ");
  GridIndex a = unflatten(shape, k);
  GridIndex b = unflatten(shape, l);
  return a.i != b.i && a.j != b.j;
}

}  // namespace lapsep
