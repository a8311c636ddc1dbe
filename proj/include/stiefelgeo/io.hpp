#pragma once

#include "stiefelgeo/types.hpp"

#include <iosfwd>
#include <string>

namespace stiefelgeo {

/// Formats a double with 17 significant digits.
std::string format_double(double v);

/// Whitespace-separated text: "rows cols" then row-major entries.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& M);

/// Tangent coordinates in text form: "A p p" header and p rows, then
/// "B m p" header and m rows (m = n - p).
struct TangentCoords {
  Matrix A;
  Matrix B;
};

TangentCoords read_tangent(std::istream& in);
TangentCoords read_tangent_file(const std::string& path);
void write_tangent(std::ostream& out, const Matrix& A, const Matrix& B);

}  // namespace stiefelgeo
