#include "lapsep/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace lapsep {

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalize the sign of zero
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "0";
  return std::string(buf, ptr);
}

namespace {

// Whitespace-separated tokens with their source line numbers; '#' comments
// run to end of line.
struct TokenStream {
  std::vector<std::string> tokens;
  std::vector<int> lines;
  size_t pos = 0;
  int last_line = 1;

  explicit TokenStream(const std::string& text) {
    int line = 1;
    std::string cur;
    bool in_comment = false;
    auto flush = [&]() {
      if (!cur.empty()) {
        tokens.push_back(cur);
        lines.push_back(line);
        cur.clear();
      }
    };
    for (char c : text) {
      if (c == '\n') {
        flush();
        in_comment = false;
        ++line;
        continue;
      }
      if (in_comment) continue;
      if (c == '#') {
        flush();
        in_comment = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        flush();
        continue;
      }
      cur += c;
    }
    flush();
  }

  bool done() const { return pos == tokens.size(); }

  const std::string& next(const char* what) {
    if (done()) throw ParseError(last_line, std::string("unexpected end of input, expected ") + what);
    last_line = lines[pos];
    return tokens[pos++];
  }

  int next_int(const char* what) {
    const std::string& t = next(what);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
      throw ParseError(last_line, "expected integer " + std::string(what) + ", got '" + t + "'");
    return v;
  }

  double next_double(const char* what) {
    const std::string& t = next(what);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size())
      throw ParseError(last_line, "expected number " + std::string(what) + ", got '" + t + "'");
    return v;
  }

  void expect_end() {
    if (!done()) throw ParseError(lines[pos], "trailing content '" + tokens[pos] + "'");
  }
};

TensorShape read_shape(TokenStream& ts) {
  int p = ts.next_int("p");
  int q = ts.next_int("q");
  if (p < 1 || q < 1) throw ParseError(ts.last_line, "dimensions must be >= 1");
  return TensorShape{p, q};
}

}  // namespace

FileKind detect_file_kind(const std::string& text) {
  TokenStream ts(text);
  const std::string& head = ts.next("file header");
  if (head == "graph") return FileKind::Graph;
  if (head == "decomp") return FileKind::Decomposition;
  int v = 0;
  auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), v);
  if (ec == std::errc() && ptr == head.data() + head.size()) return FileKind::Matrix;
  throw ParseError(ts.last_line, "unrecognized header token '" + head + "'");
}

MatrixFileContent parse_matrix_file(const std::string& text) {
  TokenStream ts(text);
  int n = ts.next_int("n");
  TensorShape shape = read_shape(ts);
  if (n != shape.dim()) throw ParseError(ts.last_line, "header n does not equal p*q");
  RealMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = ts.next_double("matrix entry");
  ts.expect_end();
  return {shape, std::move(m)};
}

WeightedGraph parse_graph_file(const std::string& text) {
  TokenStream ts(text);
  if (ts.next("header") != "graph") throw ParseError(ts.last_line, "expected 'graph' header");
  TensorShape shape = read_shape(ts);
  int m = ts.next_int("edge count");
  if (m < 0) throw ParseError(ts.last_line, "edge count must be nonnegative");
  std::vector<GraphEdge> edges;
  edges.reserve(m);
  for (int e = 0; e < m; ++e) {
    GraphEdge ge;
    ge.a.i = ts.next_int("i1");
    ge.a.j = ts.next_int("j1");
    ge.b.i = ts.next_int("i2");
    ge.b.j = ts.next_int("j2");
    ge.weight = ts.next_double("weight");
    int line = ts.last_line;
    if (!(ge.weight > 0.0)) throw ParseError(line, "edge weight must be positive");
    edges.push_back(ge);
  }
  ts.expect_end();
  try {
    return WeightedGraph(shape, std::move(edges));
  } catch (const Error& e) {
    throw ParseError(ts.last_line, e.what());
  }
}

ProductDecomposition parse_decomposition_file(const std::string& text) {
  TokenStream ts(text);
  if (ts.next("header") != "decomp") throw ParseError(ts.last_line, "expected 'decomp' header");
  TensorShape shape = read_shape(ts);
  int t = ts.next_int("term count");
  if (t < 0) throw ParseError(ts.last_line, "term count must be nonnegative");
  ProductDecomposition d;
  d.shape = shape;
  d.terms.reserve(t);
  for (int k = 0; k < t; ++k) {
    ProductTerm term;
    term.weight = ts.next_double("term weight");
    term.a.resize(shape.p);
    for (int i = 0; i < shape.p; ++i) {
      double re = ts.next_double("a re");
      double im = ts.next_double("a im");
      term.a[i] = cplx(re, im);
    }
    term.b.resize(shape.q);
    for (int i = 0; i < shape.q; ++i) {
      double re = ts.next_double("b re");
      double im = ts.next_double("b im");
      term.b[i] = cplx(re, im);
    }
    d.terms.push_back(std::move(term));
  }
  ts.expect_end();
  return d;
}

std::string write_matrix_file(const RealMatrix& m, TensorShape shape) {
  if (m.size() != shape.dim()) throw Error(Errc::ShapeMismatch, "matrix dimension is not p*q");
  std::ostringstream os;
  os << m.size() << ' ' << shape.p << ' ' << shape.q << '\n';
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) {
      if (j) os << ' ';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

std::string write_graph_file(const WeightedGraph& g) {
  std::ostringstream os;
  os << "graph " << g.shape().p << ' ' << g.shape().q << ' ' << g.edges().size() << '\n';
  for (const GraphEdge& e : g.edges())
    os << e.a.i << ' ' << e.a.j << ' ' << e.b.i << ' ' << e.b.j << ' '
       << format_double(e.weight) << '\n';
  return os.str();
}

std::string write_decomposition_file(const ProductDecomposition& d) {
  std::ostringstream os;
  os << "decomp " << d.shape.p << ' ' << d.shape.q << ' ' << d.terms.size() << '\n';
  for (const ProductTerm& t : d.terms) {
    os << format_double(t.weight) << '\n';
    for (size_t i = 0; i < t.a.size(); ++i) {
      if (i) os << ' ';
      os << format_double(t.a[i].real()) << ' ' << format_double(t.a[i].imag());
    }
    os << '\n';
    for (size_t i = 0; i < t.b.size(); ++i) {
      if (i) os << ' ';
      os << format_double(t.b[i].real()) << ' ' << format_double(t.b[i].imag());
    }
    os << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::ParseError, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(Errc::ParseError, "write to '" + path + "' failed");
}

}  // namespace lapsep
