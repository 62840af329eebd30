#pragma once

#include <stdexcept>
#include <string>

namespace lapsep {

enum class Errc {
  NotHermitian,
  NoConvergence,
  IndexOutOfRange,
  ShapeMismatch,
  EmptyGraph,
  InvalidEdge,
  NegativeEntry,
  NotLineSumSymmetric,
  NotUnitary,
  BadEmbedding,
  NotInClass,
  BlockNotLSS,
  NegativeBlockEntry,
  ResidualNotPSD,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Parse failures carry the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(Errc::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace lapsep
