#pragma once

#include "stiefelgeo/sampling.hpp"
#include "stiefelgeo/stiefel.hpp"

#include <doctest.h>

namespace testhelp {

using namespace stiefelgeo;

inline TangentBlock random_tangent(Rng& rng, int n, int p) {
  return TangentBlock::at_identity(random_skew(rng, p), gaussian_matrix(rng, n - p, p));
}

inline Matrix mat(int rows, int cols, std::initializer_list<double> v) {
  Matrix M(rows, cols);
  auto it = v.begin();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) M(i, j) = *it++;
  }
  return M;
}

}  // namespace testhelp
