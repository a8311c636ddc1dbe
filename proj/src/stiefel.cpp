#include "stiefelgeo/stiefel.hpp"

#include "stiefelgeo/matexp.hpp"

#include <Eigen/QR>

namespace stiefelgeo {

namespace {

void check_beta(double beta) { (void)Beta(beta); }

void require_same_frame(const TangentBlock& a, const TangentBlock& b) {
  if (a.base.U().rows() != b.base.U().rows() || a.base.U().cols() != b.base.U().cols() ||
      (a.base.U() - b.base.U()).norm() > 1e-12 || (a.frame - b.frame).norm() > 1e-12) {
    throw DimensionError("tangents live at different base points or frames");
  }
}

}  // namespace

StiefelPoint::StiefelPoint(Matrix U, double tol) : U_(std::move(U)) {
  if (U_.cols() < 1 || U_.rows() < U_.cols()) {
    throw DimensionError("Stiefel point must satisfy 1 <= p <= n");
  }
  if (!U_.allFinite()) throw DomainError("Stiefel point has non-finite entries");
  const double err = (U_.transpose() * U_ - Matrix::Identity(U_.cols(), U_.cols())).norm();
  if (err > tol) {
    throw DomainError("columns are not orthonormal (residual " + std::to_string(err) + ")");
  }
}

StiefelPoint StiefelPoint::identity(int n, int p) {
  if (p < 1 || n < p) throw DimensionError("identity point needs 1 <= p <= n");
  return StiefelPoint(Matrix::Identity(n, p));
}

Matrix complete_frame(const StiefelPoint& point) {
  const Matrix& U = point.U();
  const Eigen::Index n = U.rows();
  const Eigen::Index k = n - U.cols();
  if (k == 0) return Matrix(n, 0);
  const Matrix P = Matrix::Identity(n, n) - U * U.transpose();
  Eigen::ColPivHouseholderQR<Matrix> qr(P);
  Matrix Qf = qr.householderQ() * Matrix::Identity(n, k);
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    if (R(j, j) < 0.0) Qf.col(j) *= -1.0;
  }
  return Qf;
}

TangentBlock::TangentBlock(Matrix A_, Matrix B_, StiefelPoint base_, Matrix frame_)
    : A(std::move(A_)), B(std::move(B_)), base(std::move(base_)), frame(std::move(frame_)) {
  const Eigen::Index n = base.U().rows();
  const Eigen::Index p = base.U().cols();
  if (A.rows() != p || A.cols() != p) throw DimensionError("A block must be p x p");
  if (B.rows() != n - p || B.cols() != p) throw DimensionError("B block must be (n-p) x p");
  if (frame.rows() != n || frame.cols() != n - p) throw DimensionError("frame must be n x (n-p)");
  if ((A + A.transpose()).norm() > 1e-12 * std::max(1.0, A.norm())) {
    throw DomainError("A block is not skew-symmetric");
  }
}

TangentBlock TangentBlock::at_identity(const Matrix& A, const Matrix& B) {
  const auto p = static_cast<int>(A.rows());
  const auto n = static_cast<int>(p + B.rows());
  if (B.cols() != p) throw DimensionError("A and B must have the same column count");
  Matrix frame = Matrix::Zero(n, n - p);
  frame.bottomRows(n - p).setIdentity();
  return TangentBlock(A, B, StiefelPoint::identity(n, p), std::move(frame));
}

TangentBlock TangentBlock::at(const StiefelPoint& U, const Matrix& A, const Matrix& B) {
  return TangentBlock(A, B, U, complete_frame(U));
}

Matrix TangentBlock::Q() const {
  Matrix q(n(), n());
  q << base.U(), frame;
  return q;
}

Matrix TangentBlock::ambient() const { return base.U() * A + frame * B; }

Matrix TangentBlock::stacked() const {
  Matrix s(n(), p());
  s << A, B;
  return s;
}

TangentBlock TangentBlock::with(const Matrix& A_, const Matrix& B_) const {
  return TangentBlock(A_, B_, base, frame);
}

TangentBlock TangentBlock::scaled(double s) const { return with(s * A, s * B); }

TangentBlock operator+(const TangentBlock& a, const TangentBlock& b) {
  require_same_frame(a, b);
  return a.with(a.A + b.A, a.B + b.B);
}

TangentBlock operator*(double s, const TangentBlock& a) { return a.scaled(s); }

TangentBlock project_tangent(const StiefelPoint& U, const Matrix& Z) {
  if (Z.rows() != U.U().rows() || Z.cols() != U.U().cols()) {
    throw DimensionError("project_tangent: Z must be n x p");
  }
  const Matrix frame = complete_frame(U);
  const Matrix& u = U.U();
  Matrix A = skew_part(u.transpose() * Z);
  Matrix B = frame.transpose() * (Z - u * (u.transpose() * Z));
  return TangentBlock(std::move(A), std::move(B), U, frame);
}

double metric(double beta, const TangentBlock& D1, const TangentBlock& D2) {
  check_beta(beta);
  require_same_frame(D1, D2);
  return beta * (D1.A.array() * D2.A.array()).sum() + (D1.B.array() * D2.B.array()).sum();
}

double beta_norm(double beta, const TangentBlock& D) { return std::sqrt(metric(beta, D, D)); }

Matrix geodesic_generator(double beta, const Matrix& A, const Matrix& B) {
  const Eigen::Index p = A.rows();
  const Eigen::Index n = p + B.rows();
  Matrix X = Matrix::Zero(n, n);
  X.topLeftCorner(p, p) = 2.0 * beta * A;
  X.topRightCorner(p, n - p) = -B.transpose();
  X.bottomLeftCorner(n - p, p) = B;
  return X;
}

StiefelPoint geodesic(double beta, const TangentBlock& Delta, double t) {
  check_beta(beta);
  const Matrix X = geodesic_generator(beta, Delta.A, Delta.B);
  const Matrix E = expm(t * X);
  const Matrix R = expm(t * (1.0 - 2.0 * beta) * Delta.A);
  const Matrix at_id = E.leftCols(Delta.p()) * R;
  return StiefelPoint(Delta.Q() * at_id, 1e-8);
}

GeodesicDerivatives geodesic_derivatives(double beta, const TangentBlock& Delta, double t) {
  check_beta(beta);
  const Matrix& A = Delta.A;
  const Matrix& B = Delta.B;
  const Matrix E = expm(t * geodesic_generator(beta, A, B));
  const Matrix R = expm(t * (1.0 - 2.0 * beta) * A);
  const Matrix Q = Delta.Q();

  Matrix acc(Delta.n(), Delta.p());
  acc << -A.transpose() * A - B.transpose() * B, (2.0 - 2.0 * beta) * B * A;
  return {Q * E * Delta.stacked() * R, Q * E * acc * R};
}

double acceleration_norm_sq(double beta, const Matrix& A, const Matrix& B) {
  const Matrix AtA = A.transpose() * A;
  const Matrix BtB = B.transpose() * B;
  return AtA.squaredNorm() + (BtB * BtB).trace() +
         (6.0 - 8.0 * beta + 4.0 * beta * beta) * (B * A).squaredNorm();
}

double geodesic_length(double beta, const TangentBlock& Delta, double t) {
  if (!(t >= 0.0)) throw DomainError("geodesic_length: t must be nonnegative");
  return t * beta_norm(beta, Delta);
}

}  // namespace stiefelgeo
