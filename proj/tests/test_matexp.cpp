#include "helpers.hpp"
#include "oracles.hpp"

#include "stiefelgeo/matexp.hpp"

#include <algorithm>

using namespace stiefelgeo;
using testhelp::mat;

TEST_SUITE("matexp") {
  TEST_CASE("expm of zero is the identity") {
    CHECK((expm(Matrix::Zero(3, 3)) - Matrix::Identity(3, 3)).norm() == doctest::Approx(0.0));
  }

  TEST_CASE("expm of a half-turn generator is minus identity") {
    const Matrix X = mat(2, 2, {0, -kPi, kPi, 0});
    CHECK((expm(X) + Matrix::Identity(2, 2)).norm() < 1e-14);
  }

  TEST_CASE("expm agrees with a long-double Taylor reference") {
    Rng rng(7);
    for (int d = 1; d <= 12; ++d) {
      for (double scale : {1e-3, 0.3, 2.0, 9.0, 40.0}) {
        const Matrix X = scale * gaussian_matrix(rng, d, d) / std::sqrt(static_cast<double>(d));
        const Matrix ref = oracle::expm_taylor(X);
        CHECK((expm(X) - ref).norm() <= 1e-11 * std::max(1.0, ref.norm()));
      }
    }
  }

  TEST_CASE("expm of a random 6x6 skew matrix is orthogonal") {
    Rng rng(11);
    const Matrix Q = expm(random_skew(rng, 6));
    CHECK((Q.transpose() * Q - Matrix::Identity(6, 6)).norm() <= 1e-12);
  }

  TEST_CASE("expm rejects non-square and non-finite input") {
    CHECK_THROWS_AS(expm(Matrix::Zero(2, 3)), DimensionError);
    Matrix X = Matrix::Zero(2, 2);
    X(0, 1) = std::nan("");
    CHECK_THROWS_AS(expm(X), DomainError);
  }

  TEST_CASE("dexpm special directions") {
    Rng rng(3);
    const Matrix X = gaussian_matrix(rng, 4, 4);
    const Matrix Y = gaussian_matrix(rng, 4, 4);
    CHECK((dexpm(Matrix::Zero(4, 4), Y) - Y).norm() < 1e-13);
    CHECK((dexpm(X, X) - expm(X) * X).norm() < 1e-10 * expm(X).norm() * X.norm());
  }

  TEST_CASE("dexpm matches central differences of the reference exponential") {
    Rng rng(5);
    for (int i = 0; i < 20; ++i) {
      const Matrix X = gaussian_matrix(rng, 4, 4);
      const Matrix Y = gaussian_matrix(rng, 4, 4);
      const Matrix fd = oracle::central_difference(
          [&](double s) { return oracle::expm_taylor(X + s * Y); }, 0.0, 1e-5);
      CHECK((dexpm(X, Y) - fd).norm() <= 1e-8 * std::max(1.0, fd.norm()));
    }
  }

  TEST_CASE("build_G small cases") {
    Vector zero(1);
    zero << 0.0;
    CHECK((build_G(zero, 2) - Matrix::Identity(2, 2)).norm() == 0.0);
    Vector quarter(1);
    quarter << kPi / 2.0;
    const Matrix expected = mat(3, 3, {0, -1, 0, 1, 0, 0, 0, 0, 1});
    CHECK((build_G(quarter, 3) - expected).norm() < 1e-15);
  }

  TEST_CASE("expm of an angle block equals the rotation block") {
    Rng rng(9);
    for (int k = -2; k <= 2; ++k) {
      Vector phi(1);
      phi << std::uniform_real_distribution<double>(0.0, kPi)(rng);
      IntVector kk(1);
      kk << k;
      CHECK((oracle::expm_taylor(build_Omega(phi, kk, 2)) - build_G(phi, 2)).norm() < 1e-12);
    }
  }

  TEST_CASE("schur_so of the identity has zero angles") {
    const SchurOrthForm f = schur_so(Matrix::Identity(5, 5));
    CHECK(f.phi.size() == 2);
    CHECK(f.phi.cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("schur_so of a canonical form returns its sorted angles") {
    Vector phi(2);
    phi << 0.4, 2.1;
    const SchurOrthForm f = schur_so(build_G(phi, 4));
    CHECK(f.phi(0) == doctest::Approx(2.1).epsilon(1e-13));
    CHECK(f.phi(1) == doctest::Approx(0.4).epsilon(1e-13));
  }

  TEST_CASE("schur_so recovers conjugated angles") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
      Vector phi0(3);
      for (auto& x : phi0) x = std::uniform_real_distribution<double>(0.0, kPi)(rng);
      const Matrix V0 = random_rotation(rng, 6);
      const Matrix Q = V0 * build_G(phi0, 6) * V0.transpose();
      const SchurOrthForm f = schur_so(Q);
      std::sort(phi0.begin(), phi0.end(), std::greater<>());
      CHECK((f.phi - phi0).cwiseAbs().maxCoeff() < 1e-9);
      CHECK((f.V * build_G(f.phi, 6) * f.V.transpose() - Q).norm() < 1e-10);
    }
  }

  TEST_CASE("schur_so handles half turns and reflections of the frame") {
    Matrix Q = -Matrix::Identity(4, 4);
    SchurOrthForm f = schur_so(Q);
    CHECK((f.phi.array() - kPi).abs().maxCoeff() < 1e-12);
    CHECK((f.V * build_G(f.phi, 4) * f.V.transpose() - Q).norm() < 1e-12);
    CHECK_THROWS_AS(schur_so(mat(2, 2, {1, 0, 0, -1})), DomainError);
    CHECK_THROWS_AS(schur_so(mat(2, 2, {1, 1, 0, 1})), DomainError);
  }

  TEST_CASE("schur_skew small cases") {
    SchurSkewForm z = schur_skew(Matrix::Zero(2, 2));
    CHECK(z.phi(0) == 0.0);
    CHECK(z.k(0) == 0);
    SchurSkewForm f = schur_skew(mat(2, 2, {0, -kTwoPi, kTwoPi, 0}));
    CHECK(std::abs(f.phi(0)) < 1e-12);
    CHECK(f.k(0) == 1);
  }

  TEST_CASE("schur_skew reconstructs random skew matrices") {
    Rng rng(4);
    for (int d = 1; d <= 7; ++d) {
      const Matrix A = 3.0 * random_skew(rng, d);
      const SchurSkewForm f = schur_skew(A);
      CHECK((f.V * build_Omega(f.phi, f.k, d) * f.V.transpose() - A).norm() <= 1e-10);
      CHECK((f.V.transpose() * f.V - Matrix::Identity(d, d)).norm() < 1e-12);
      CHECK(((f.phi.array() >= 0.0) && (f.phi.array() <= kPi)).all());
    }
  }

  TEST_CASE("logarithm branches of the identity") {
    const auto logs = expm_inverse_branches(Matrix::Identity(2, 2), 1);
    auto contains = [&](const Matrix& X) {
      return std::any_of(logs.begin(), logs.end(), [&](const Matrix& L) { return (L - X).norm() < 1e-9; });
    };
    CHECK(contains(Matrix::Zero(2, 2)));
    CHECK(contains(mat(2, 2, {0, -kTwoPi, kTwoPi, 0})));
    CHECK(contains(mat(2, 2, {0, kTwoPi, -kTwoPi, 0})));
  }

  TEST_CASE("logarithm branches of a random rotation") {
    Rng rng(12);
    const Matrix Q = random_rotation(rng, 4);
    const auto logs = expm_inverse_branches(Q, 1);
    CHECK(logs.size() == 9);
    for (const auto& X : logs) CHECK((oracle::expm_taylor(X) - Q).norm() <= 1e-9);
  }

  TEST_CASE("orthosymplectic membership") {
    CHECK(is_orthosymplectic(Matrix::Identity(4, 4), 1e-12));
    CHECK(is_orthosymplectic(block_J(2), 1e-12));
    Matrix D = Matrix::Identity(4, 4);
    D(1, 1) = -1.0;
    CHECK_FALSE(is_orthosymplectic(D, 1e-12));
  }

  TEST_CASE("skew eigen-angles are sorted magnitudes") {
    Matrix A = Matrix::Zero(5, 5);
    A(0, 1) = -1.0;
    A(1, 0) = 1.0;
    A(2, 3) = -3.0;
    A(3, 2) = 3.0;
    const Vector th = skew_eigen_angles(A);
    REQUIRE(th.size() == 2);
    CHECK(th(0) == doctest::Approx(3.0));
    CHECK(th(1) == doctest::Approx(1.0));
  }

  TEST_CASE("fault injection drops a squaring") {
    const Matrix X = mat(2, 2, {0, -kTwoPi, kTwoPi, 0});
    const Matrix clean = expm(X);
    Matrix faulty;
    {
      testing::ScopedExpmFault fault;
      faulty = expm(X);
    }
    CHECK((clean - Matrix::Identity(2, 2)).norm() < 1e-12);
    CHECK((faulty - Matrix::Identity(2, 2)).norm() > 1.0);
    CHECK_FALSE(testing::expm_fault_active());
  }
}
