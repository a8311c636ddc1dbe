#pragma once

#include "stiefelgeo/types.hpp"

#include <vector>

namespace stiefelgeo {

/// Real Schur form of a special-orthogonal matrix: Q = V * G_p(phi) * V^T.
///
/// `phi` holds floor(p/2) rotation angles in [0, pi], sorted descending.
/// V is orthogonal; it is a rotation whenever the spectrum allows one
/// (odd p, or an angle equal to 0 or pi). For even p with every angle
/// strictly inside (0, pi) and an improper eigenbasis no rotation V with
/// nonnegative angles exists, and `proper()` reports false.
struct SchurOrthForm {
  Matrix V;
  Vector phi;

  [[nodiscard]] bool proper() const { return V.rows() == 0 || V.determinant() > 0.0; }
};

/// Real Schur form of a skew-symmetric matrix: A = V * Omega_p(phi, k) * V^T.
///
/// Each 2x2 block carries the angle phi_j + 2 pi k_j with phi_j in [0, pi]
/// and k_j an integer branch index. Blocks are sorted by descending
/// |phi_j + 2 pi k_j|. The block orientation is chosen so that phi_j lands
/// in [0, pi]; for block magnitudes in (pi, 2 pi) mod 2 pi this makes k_j
/// negative.
struct SchurSkewForm {
  Matrix V;
  Vector phi;
  IntVector k;

  /// Block magnitudes |phi_j + 2 pi k_j|.
  [[nodiscard]] Vector magnitudes() const;
};

/// Matrix exponential by scaling and squaring with diagonal Pade approximants
/// (orders 3, 5, 7, 9, 13; the order is picked from the 1-norm).
Matrix expm(const Matrix& X);

/// Directional (Frechet) derivative D expm(X)[Y], read off the upper-right
/// block of expm([[X, Y], [0, X]]).
Matrix dexpm(const Matrix& X, const Matrix& Y);

/// Returns expm(X) and D expm(X)[Y] from one block exponential.
std::pair<Matrix, Matrix> expm_with_derivative(const Matrix& X, const Matrix& Y);

/// G_p(phi): block-diagonal rotations, trailing 1 when p is odd.
Matrix build_G(const Vector& phi, int p);

/// Omega_p(phi, k): block-diagonal (phi_j + 2 pi k_j) J_2, trailing 0 when p is odd.
Matrix build_Omega(const Vector& phi, const IntVector& k, int p);

SchurOrthForm schur_so(const Matrix& Q);
SchurSkewForm schur_skew(const Matrix& A);

/// Logarithm branches V Omega_p(phi, K) V^T over the integer grid |K_jj| <= k_max,
/// using the fixed frame V of schur_so(Q). Deduplicated, grid order
/// (first block index varies slowest).
std::vector<Matrix> expm_inverse_branches(const Matrix& Q, int k_max);

/// I_m (x) J_2, the block-diagonal pattern commuting with G_{2m}(phi I).
Matrix block_J(int m);

/// True iff M M^T = I and M J = J M (with J = block_J) hold within tol.
bool is_orthosymplectic(const Matrix& M, double tol);

/// Nonnegative eigen-angles theta_j of a skew matrix (eigenvalues +-i theta_j),
/// floor(n/2) of them, sorted descending.
Vector skew_eigen_angles(const Matrix& A);

inline Matrix skew_part(const Matrix& M) { return 0.5 * (M - M.transpose()); }

namespace testing {

/// Drops the final squaring step of expm on the current thread while alive.
/// Used only by mutation-style self tests of the invariant suites.
class ScopedExpmFault {
 public:
  ScopedExpmFault();
  ~ScopedExpmFault();
  ScopedExpmFault(const ScopedExpmFault&) = delete;
  ScopedExpmFault& operator=(const ScopedExpmFault&) = delete;

 private:
  bool previous_;
};

bool expm_fault_active();
void set_expm_fault(bool active);

}  // namespace testing

}  // namespace stiefelgeo
