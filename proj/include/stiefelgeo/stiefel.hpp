#pragma once

#include "stiefelgeo/types.hpp"

namespace stiefelgeo {

/// A point of St(n, p): an n x p matrix with orthonormal columns.
class StiefelPoint {
 public:
  /// Validates U^T U = I within `tol` (Frobenius).
  explicit StiefelPoint(Matrix U, double tol = 1e-10);

  /// The distinguished point I_{n x p}.
  static StiefelPoint identity(int n, int p);

  [[nodiscard]] const Matrix& U() const noexcept { return U_; }
  [[nodiscard]] int n() const noexcept { return static_cast<int>(U_.rows()); }
  [[nodiscard]] int p() const noexcept { return static_cast<int>(U_.cols()); }

 private:
  Matrix U_;
};

/// Orthonormal completion U_perp with [U U_perp] orthogonal.
///
/// Column-pivoted Householder QR of (I - U U^T); columns are sign-normalized
/// so that the triangular factor has a nonnegative diagonal. At I_{n x p} this
/// yields the trailing unit vectors e_{p+1}, ..., e_n.
Matrix complete_frame(const StiefelPoint& U);

/// Tangent vector Delta = U A + U_perp B, stored in the frame Q = [U U_perp].
struct TangentBlock {
  Matrix A;  ///< p x p skew
  Matrix B;  ///< (n - p) x p
  StiefelPoint base;
  Matrix frame;  ///< U_perp, n x (n - p)

  TangentBlock(Matrix A_, Matrix B_, StiefelPoint base_, Matrix frame_);

  /// Tangent at I_{n x p}; n is inferred as p + B.rows().
  static TangentBlock at_identity(const Matrix& A, const Matrix& B);
  /// Tangent at U in the frame complete_frame(U).
  static TangentBlock at(const StiefelPoint& U, const Matrix& A, const Matrix& B);

  [[nodiscard]] int n() const noexcept { return base.n(); }
  [[nodiscard]] int p() const noexcept { return base.p(); }

  /// Q = [U U_perp].
  [[nodiscard]] Matrix Q() const;
  /// The ambient n x p matrix U A + U_perp B.
  [[nodiscard]] Matrix ambient() const;
  /// The stacked coordinates [A; B] (n x p).
  [[nodiscard]] Matrix stacked() const;

  /// Same base and frame, new coordinates.
  [[nodiscard]] TangentBlock with(const Matrix& A_, const Matrix& B_) const;
  [[nodiscard]] TangentBlock scaled(double s) const;
};

TangentBlock operator+(const TangentBlock& a, const TangentBlock& b);
TangentBlock operator*(double s, const TangentBlock& a);

/// Tangential part of Z at U: A = skew(U^T Z), B = U_perp^T (I - U U^T) Z.
TangentBlock project_tangent(const StiefelPoint& U, const Matrix& Z);

/// beta tr(A1^T A2) + tr(B1^T B2).
double metric(double beta, const TangentBlock& D1, const TangentBlock& D2);
double beta_norm(double beta, const TangentBlock& D);

/// gamma(t) = Q expm(t X) I_{n x p} expm(t (1 - 2 beta) A), X = [[2 beta A, -B^T], [B, 0]].
StiefelPoint geodesic(double beta, const TangentBlock& Delta, double t);

/// The n x n skew generator [[2 beta A, -B^T], [B, 0]].
Matrix geodesic_generator(double beta, const Matrix& A, const Matrix& B);

struct GeodesicDerivatives {
  Matrix velocity;
  Matrix acceleration;
};

/// First and second ambient derivatives of the geodesic at time t.
GeodesicDerivatives geodesic_derivatives(double beta, const TangentBlock& Delta, double t);

/// Closed-form ||gamma''||_E^2 = ||A^T A||^2 + tr((B^T B)^2) + (6 - 8 beta + 4 beta^2) ||B A||^2.
double acceleration_norm_sq(double beta, const Matrix& A, const Matrix& B);

/// t * ||Delta||_beta; throws DomainError for t < 0.
double geodesic_length(double beta, const TangentBlock& Delta, double t);

}  // namespace stiefelgeo
