#include "helpers.hpp"
#include "oracles.hpp"

#include "stiefelgeo/matexp.hpp"

using namespace stiefelgeo;
using testhelp::mat;
using testhelp::random_tangent;

namespace {

StiefelPoint random_point(Rng& rng, int n, int p) {
  return StiefelPoint(random_rotation(rng, n).leftCols(p));
}

/// beta-speed of a curve from ambient finite differences, independent of the closed form.
double fd_beta_speed(double beta, const std::function<Matrix(double)>& curve, double t) {
  const Matrix U = curve(t);
  const Matrix V = oracle::central_difference(curve, t, 1e-6);
  const Matrix A = U.transpose() * V;
  const Matrix N = V - U * A;
  return std::sqrt(beta * A.squaredNorm() + N.squaredNorm());
}

}  // namespace

TEST_SUITE("stiefel") {
  TEST_CASE("point validation") {
    CHECK_NOTHROW(StiefelPoint::identity(4, 2));
    CHECK_THROWS_AS(StiefelPoint(Matrix::Ones(3, 2)), DomainError);
    CHECK_THROWS_AS(StiefelPoint::identity(2, 3), DimensionError);
  }

  TEST_CASE("frame completion") {
    const Matrix F = complete_frame(StiefelPoint::identity(4, 2));
    CHECK((F - Matrix::Identity(4, 4).rightCols(2)).norm() < 1e-15);
    CHECK(complete_frame(StiefelPoint::identity(3, 3)).cols() == 0);
    Rng rng(2);
    for (int i = 0; i < 10; ++i) {
      const StiefelPoint U = random_point(rng, 6, 1 + i % 5);
      Matrix Q(6, 6);
      Q << U.U(), complete_frame(U);
      CHECK((Q.transpose() * Q - Matrix::Identity(6, 6)).norm() < 1e-12);
    }
  }

  TEST_CASE("tangent projection") {
    Rng rng(3);
    const StiefelPoint U = random_point(rng, 5, 2);
    const Matrix S = gaussian_matrix(rng, 2, 2);
    const TangentBlock normal = project_tangent(U, U.U() * (S + S.transpose()));
    CHECK(normal.A.norm() < 1e-14);
    CHECK(normal.B.norm() < 1e-14);

    const TangentBlock D = TangentBlock::at(U, random_skew(rng, 2), gaussian_matrix(rng, 3, 2));
    const TangentBlock back = project_tangent(U, D.ambient());
    CHECK((back.A - D.A).norm() < 1e-13);
    CHECK((back.B - D.B).norm() < 1e-13);

    const Matrix Z = gaussian_matrix(rng, 5, 2);
    const Matrix P = Matrix::Identity(5, 5) - U.U() * U.U().transpose();
    const Matrix expected = P * Z + U.U() * skew_part(U.U().transpose() * Z);
    CHECK((project_tangent(U, Z).ambient() - expected).norm() < 1e-12);
  }

  TEST_CASE("tangent validation") {
    CHECK_THROWS_AS(TangentBlock::at_identity(Matrix::Ones(2, 2), Matrix::Zero(2, 2)), DomainError);
    CHECK_THROWS_AS(TangentBlock::at_identity(Matrix::Zero(2, 2), Matrix::Zero(2, 3)), DimensionError);
  }

  TEST_CASE("metric values") {
    Rng rng(4);
    const Matrix B1 = gaussian_matrix(rng, 2, 2);
    const Matrix B2 = gaussian_matrix(rng, 2, 2);
    const auto D1 = TangentBlock::at_identity(Matrix::Zero(2, 2), B1);
    const auto D2 = TangentBlock::at_identity(Matrix::Zero(2, 2), B2);
    CHECK(metric(1.0, D1, D2) == doctest::Approx((B1.transpose() * B2).trace()));
    const auto Da = TangentBlock::at_identity(mat(2, 2, {0, -1, 1, 0}), Matrix::Zero(2, 2));
    CHECK(beta_norm(0.5, Da) == doctest::Approx(1.0));
    for (int i = 0; i < 100; ++i) {
      const auto D = random_tangent(rng, 5, 2);
      CHECK(metric(0.3, D, D) > 0.0);
    }
    CHECK_THROWS_AS(metric(0.0, D1, D2), DomainError);
    CHECK_THROWS_AS(metric(-1.0, D1, D2), DomainError);
  }

  TEST_CASE("geodesics through a zero tangent stay put") {
    const auto D = TangentBlock::at_identity(Matrix::Zero(2, 2), Matrix::Zero(2, 2));
    CHECK((geodesic(0.7, D, 3.0).U() - StiefelPoint::identity(4, 2).U()).norm() == 0.0);
  }

  TEST_CASE("great circle on the sphere") {
    const auto D = TangentBlock::at_identity(Matrix::Zero(1, 1), mat(2, 1, {1, 0}));
    const Matrix end = geodesic(0.5, D, kPi).U();
    CHECK((end + StiefelPoint::identity(3, 1).U()).norm() < 1e-14);
  }

  TEST_CASE("geodesics stay on the manifold with constant speed") {
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
      const double beta = 0.2 + 0.3 * i;
      const auto D = random_tangent(rng, 5, 2);
      const auto curve = [&](double t) { return geodesic(beta, D, t).U(); };
      const double v0 = fd_beta_speed(beta, curve, 0.3);
      for (double t : {0.7, 1.5, 3.1}) {
        const Matrix U = curve(t);
        CHECK((U.transpose() * U - Matrix::Identity(2, 2)).norm() < 1e-12);
        CHECK(fd_beta_speed(beta, curve, t) == doctest::Approx(v0).epsilon(1e-8));
      }
      CHECK(v0 == doctest::Approx(beta_norm(beta, D)).epsilon(1e-8));
    }
  }

  TEST_CASE("derivatives at time zero") {
    Rng rng(6);
    const double beta = 0.35;
    const auto D = random_tangent(rng, 5, 2);
    const GeodesicDerivatives d = geodesic_derivatives(beta, D, 0.0);
    Matrix acc(5, 2);
    acc << -D.A.transpose() * D.A - D.B.transpose() * D.B, (2.0 - 2.0 * beta) * D.B * D.A;
    CHECK((d.velocity - D.stacked()).norm() < 1e-13);
    CHECK((d.acceleration - acc).norm() < 1e-12);
  }

  TEST_CASE("derivatives agree with finite differences") {
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
      const double beta = std::uniform_real_distribution<double>(0.1, 2.0)(rng);
      const double t = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
      const StiefelPoint U = random_point(rng, 5, 2);
      const auto D = TangentBlock::at(U, random_skew(rng, 2), gaussian_matrix(rng, 3, 2));
      const auto curve = [&](double s) { return geodesic(beta, D, s).U(); };
      const GeodesicDerivatives d = geodesic_derivatives(beta, D, t);
      const Matrix v_fd = oracle::central_difference(curve, t, 1e-5);
      const Matrix a_fd = (curve(t + 1e-4) - 2.0 * curve(t) + curve(t - 1e-4)) / 1e-8;
      CHECK((d.velocity - v_fd).norm() < 1e-7 * std::max(1.0, v_fd.norm()));
      CHECK((d.acceleration - a_fd).norm() < 1e-5 * std::max(1.0, a_fd.norm()));
    }
  }

  TEST_CASE("closed-form second derivative norm") {
    Rng rng(8);
    for (int i = 0; i < 20; ++i) {
      const double beta = 0.1 + 0.15 * i;
      const auto D = random_tangent(rng, 6, 3);
      const Matrix& A = D.A;
      const Matrix& B = D.B;
      const Matrix BtB = B.transpose() * B;
      const Matrix direct_block = -A.transpose() * A - BtB;
      const double direct = direct_block.squaredNorm() + ((2.0 - 2.0 * beta) * B * A).squaredNorm();
      CHECK(acceleration_norm_sq(beta, A, B) == doctest::Approx(direct).epsilon(1e-12));
    }
  }

  TEST_CASE("lengths") {
    const auto D = TangentBlock::at_identity(Matrix::Zero(2, 2), mat(1, 2, {kTwoPi, 0}));
    CHECK(geodesic_length(0.5, D, 0.0) == 0.0);
    CHECK(geodesic_length(0.5, D, 1.0) == doctest::Approx(kTwoPi).epsilon(1e-15));
    CHECK_THROWS_AS(geodesic_length(0.5, D, -1.0), DomainError);

    Rng rng(9);
    oracle::GaussLegendre64 gl;
    for (int i = 0; i < 5; ++i) {
      const double beta = 0.25 + 0.4 * i;
      const auto R = random_tangent(rng, 5, 2);
      const auto curve = [&](double t) { return geodesic(beta, R, t).U(); };
      const double quad = gl.integrate([&](double t) { return fd_beta_speed(beta, curve, t); }, 0.0, 1.5);
      CHECK(geodesic_length(beta, R, 1.5) == doctest::Approx(quad).epsilon(1e-9));
    }
  }
}
