#include "stiefelgeo/sampling.hpp"

#include <Eigen/QR>

namespace stiefelgeo {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = dist(rng);
  }
  return M;
}

Matrix random_skew(Rng& rng, Eigen::Index p) {
  const Matrix G = gaussian_matrix(rng, p, p);
  return 0.5 * (G - G.transpose());
}

Matrix random_rotation(Rng& rng, Eigen::Index p) {
  if (p == 0) return Matrix(0, 0);
  const Matrix G = gaussian_matrix(rng, p, p);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (R(j, j) < 0.0) Q.col(j) *= -1.0;
  }
  if (Q.determinant() < 0.0) Q.col(0) *= -1.0;
  return Q;
}

}  // namespace stiefelgeo
