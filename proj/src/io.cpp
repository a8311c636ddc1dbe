#include "stiefelgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace stiefelgeo {

namespace {

Eigen::Index read_extent(std::istream& in, const char* what) {
  long long v = -1;
  if (!(in >> v) || v < 0) throw ParseError(std::string("expected nonnegative ") + what);
  return static_cast<Eigen::Index>(v);
}

Matrix read_entries(std::istream& in, Eigen::Index rows, Eigen::Index cols) {
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      std::string tok;
      if (!(in >> tok)) {
        throw ParseError("matrix ended early at entry (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
      }
      try {
        std::size_t used = 0;
        M(i, j) = std::stod(tok, &used);
        if (used != tok.size()) throw ParseError("bad number '" + tok + "'");
      } catch (const std::logic_error&) {
        throw ParseError("bad number '" + tok + "'");
      }
      if (!std::isfinite(M(i, j))) throw ParseError("non-finite entry '" + tok + "'");
    }
  }
  return M;
}

Matrix read_labeled(std::istream& in, const std::string& label) {
  std::string tag;
  if (!(in >> tag) || tag != label) {
    throw ParseError("expected block header '" + label + "'");
  }
  const Eigen::Index r = read_extent(in, "row count");
  const Eigen::Index c = read_extent(in, "column count");
  return read_entries(in, r, c);
}

void write_rows(std::ostream& out, const Matrix& M) {
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(M(i, j));
    }
    out << '\n';
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Matrix read_matrix(std::istream& in) {
  const Eigen::Index r = read_extent(in, "row count");
  const Eigen::Index c = read_extent(in, "column count");
  Matrix M = read_entries(in, r, c);
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after matrix: '" + extra + "'");
  return M;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& M) {
  out << M.rows() << ' ' << M.cols() << '\n';
  write_rows(out, M);
}

TangentCoords read_tangent(std::istream& in) {
  TangentCoords t;
  t.A = read_labeled(in, "A");
  if (t.A.rows() != t.A.cols()) throw ParseError("A block must be square");
  t.B = read_labeled(in, "B");
  if (t.B.cols() != t.A.cols()) throw ParseError("B block must have p columns");
  std::string extra;
  if (in >> extra) throw ParseError("trailing data after tangent: '" + extra + "'");
  return t;
}

TangentCoords read_tangent_file(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_tangent(in);
}

void write_tangent(std::ostream& out, const Matrix& A, const Matrix& B) {
  out << "A " << A.rows() << ' ' << A.cols() << '\n';
  write_rows(out, A);
  out << "B " << B.rows() << ' ' << B.cols() << '\n';
  write_rows(out, B);
}

}  // namespace stiefelgeo
