#include "stiefelgeo/loops.hpp"

#include "stiefelgeo/matexp.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>

namespace stiefelgeo {

double loop_length_bound(double beta) {
  (void)Beta(beta);
  return std::min(std::sqrt(2.0 * beta), 1.0) * kTwoPi;
}

LoopKind parse_loop_kind(const std::string& s) {
  if (s == "a" || s == "A" || s == "A-loop") return LoopKind::ALoop;
  if (s == "b" || s == "B" || s == "B-loop") return LoopKind::BLoop;
  throw DomainError("unknown loop kind '" + s + "' (expected a or b)");
}

LoopCertificate canonical_loop(double beta, int n, int p, LoopKind kind, double tol) {
  (void)Beta(beta);
  if (p < 1 || n < p) throw DimensionError("canonical_loop: need 1 <= p <= n");
  Matrix A = Matrix::Zero(p, p);
  Matrix B = Matrix::Zero(n - p, p);
  if (kind == LoopKind::BLoop) {
    if (p == n) throw DimensionError("B-loop needs p <= n - 1");
    B(0, 0) = kTwoPi;
  } else {
    if (p < 2) throw DimensionError("A-loop needs p >= 2");
    A(0, 1) = -kTwoPi;
    A(1, 0) = kTwoPi;
  }
  LoopCertificate cert = verify_loop(beta, TangentBlock::at_identity(A, B), 1.0, tol);
  if (!cert.blocks && cert.residual <= 1e-8) cert.blocks = loop_block_structure(beta, cert.delta);
  return cert;
}

LoopCertificate verify_loop(double beta, const TangentBlock& Delta, double t_L, double tol) {
  (void)Beta(beta);
  if (!(t_L > 0.0)) throw DomainError("verify_loop: t_L must be positive");
  const StiefelPoint end = geodesic(beta, Delta, t_L);
  const double residual = (end.U() - Delta.base.U()).norm();
  LoopCertificate cert{beta, Delta, t_L, residual, geodesic_length(beta, Delta, t_L),
                       residual <= tol, tol, std::nullopt};
  if (cert.is_loop && residual <= 1e-8) {
    cert.blocks = loop_block_structure(beta, Delta.scaled(t_L));
  }
  return cert;
}

LoopBlocks loop_block_structure(double beta, const TangentBlock& Delta) {
  (void)Beta(beta);
  const double residual = (geodesic(beta, Delta, 1.0).U() - Delta.base.U()).norm();
  if (residual > 1e-8) {
    throw NotALoop("loop_block_structure: closure residual " + std::to_string(residual) +
                   " exceeds 1e-8");
  }
  const Eigen::Index p = Delta.p();
  const Eigen::Index m = Delta.n() - p;
  Matrix Bred = Matrix::Zero(p, p);
  std::string reduction = "none";
  if (m > p) {
    Eigen::HouseholderQR<Matrix> qr(Delta.B);
    Bred = qr.matrixQR().topRows(p).triangularView<Eigen::Upper>();
    reduction = "qr";
  } else {
    Bred.topRows(m) = Delta.B;
    if (m < p) reduction = "zero-pad";
  }

  const Matrix& A = Delta.A;
  const Matrix E = expm(geodesic_generator(beta, A, Bred));
  const Matrix R = expm((1.0 - 2.0 * beta) * A);

  LoopBlocks out;
  out.E11 = E.topLeftCorner(p, p);
  out.E22 = E.bottomRightCorner(p, p);
  out.off_diagonal = E.topRightCorner(p, p).norm();
  out.inverse = (out.E11 * R - Matrix::Identity(p, p)).norm();
  out.reduction = reduction;
  out.phi1 = schur_so(out.E11).phi;
  out.phi2 = schur_so(out.E22).phi;
  return out;
}

InterlacingResult interlacing_check(double beta, const Matrix& A, const Matrix& B) {
  (void)Beta(beta);
  if (!(beta > 0.5)) throw DomainError("interlacing_check: requires beta > 1/2");
  if (A.rows() != A.cols() || B.cols() != A.cols()) {
    throw DimensionError("interlacing_check: A must be p x p and B must have p columns");
  }
  const Eigen::Index p = A.rows();
  const Matrix X = geodesic_generator(beta, A, B);
  const Vector sx = Eigen::JacobiSVD<Matrix>(X).singularValues();
  const Vector sa = Eigen::JacobiSVD<Matrix>((1.0 - 2.0 * beta) * A).singularValues();
  const double factor = 2.0 * beta / (2.0 * beta - 1.0);
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < p; ++j) margin = std::min(margin, sx(j) - factor * sa(j));
  if (p == 0) margin = 0.0;
  return {margin >= -1e-10, margin};
}

double euclidean_loop_floor(double beta, const TangentBlock& Delta) {
  const double speed = Delta.ambient().norm();
  if (std::abs(speed - 1.0) > 1e-10) {
    throw DomainError("euclidean_loop_floor: tangent must have unit Euclidean norm");
  }
  const GeodesicDerivatives d = geodesic_derivatives(beta, Delta, 0.0);
  return kTwoPi / d.acceleration.norm();
}

double acceleration_bound_sq(double beta, const Matrix& A, const Matrix& B) {
  const double a2 = A.squaredNorm();
  const double b2 = B.squaredNorm();
  return 1.0 + (1.0 - 4.0 * beta + 2.0 * beta * beta) * b2 * a2 - 0.5 * a2 * a2;
}

double beta_ratio_floor(double beta, double alpha) {
  (void)Beta(beta);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("beta_ratio_floor: alpha must lie in [0, 1]");
  const double a2 = alpha * alpha;
  const double num = 1.0 + (beta - 1.0) * a2;
  const double den = 1.0 + (1.0 - 4.0 * beta + 2.0 * beta * beta) * a2 +
                     (-1.5 + 4.0 * beta - 2.0 * beta * beta) * a2 * a2;
  return kTwoPi * kTwoPi * num / den;
}

}  // namespace stiefelgeo
