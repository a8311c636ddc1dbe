#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's exponential, Schur or curvature code.

#include "stiefelgeo/types.hpp"

#include <Eigen/SVD>

#include <array>
#include <cmath>
#include <functional>

namespace oracle {

using stiefelgeo::Matrix;

/// Taylor series with scaling and squaring, evaluated in long double.
inline Matrix expm_taylor(const Matrix& X) {
  using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const auto n = X.rows();
  LMat Y = X.cast<long double>();
  int s = 0;
  long double nrm = Y.cwiseAbs().colwise().sum().maxCoeff();
  while (nrm > 0.25L) {
    nrm /= 2.0L;
    ++s;
  }
  Y /= std::ldexp(1.0L, s);
  LMat term = LMat::Identity(n, n);
  LMat sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * Y / static_cast<long double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum.cast<double>();
}

/// Central difference of a matrix-valued curve.
inline Matrix central_difference(const std::function<Matrix(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

/// 64-point Gauss-Legendre nodes and weights on [-1, 1] via Newton on P_64.
struct GaussLegendre64 {
  std::array<double, 64> x{};
  std::array<double, 64> w{};

  GaussLegendre64() {
    constexpr int n = 64;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[static_cast<std::size_t>(i)] = z;
      w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }

  double integrate(const std::function<double(double)>& f, double a, double b) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < 64; ++i) acc += w[i] * f(0.5 * (b - a) * x[i] + 0.5 * (a + b));
    return 0.5 * (b - a) * acc;
  }
};

/// First root of tan t + t on (pi/2, pi) by bisection.
inline double tan_plus_t_root() {
  double lo = M_PI / 2.0 + 1e-9;
  double hi = M_PI;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::tan(mid) + mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// First positive root of sin(t)/t + c cos(t), c = (1 - beta)/beta, by a fine
/// sign scan followed by bisection.
inline double jacobi_root(double beta) {
  const double c = (1.0 - beta) / beta;
  auto f = [&](double t) { return std::sin(t) / t + c * std::cos(t); };
  const double step = 1e-3;
  double a = step;
  while (f(a) * f(a + step) > 0.0) a += step;
  double lo = a;
  double hi = a + step;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (f(lo) * f(mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Piecewise curvature bound for 2 <= p <= n - 2, beta in (0, 1].
inline double generic_curvature_bound(double beta) {
  if (beta <= (4.0 - std::sqrt(10.0)) / 6.0) return 1.0 / (4.0 * beta);
  if (beta <= 2.0 / 3.0) return (4.0 - 3.0 * beta) / 2.0;
  return 1.0;
}

/// Numerical rank deficiency of Y -> d/ds expm(A + sY) restricted to skew Y,
/// with the derivative taken by central differences of the Taylor exponential.
inline bool differential_rank_deficient(const Matrix& A, double rel_tol = 1e-6) {
  const Eigen::Index n = A.rows();
  const Eigen::Index dim = n * (n - 1) / 2;
  Matrix M(n * n, dim);
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      Matrix E = Matrix::Zero(n, n);
      E(i, j) = -1.0;
      E(j, i) = 1.0;
      const double h = 1e-5;
      M.col(col++) = ((expm_taylor(A + h * E) - expm_taylor(A - h * E)) / (2.0 * h)).reshaped();
    }
  }
  const auto sv = Eigen::JacobiSVD<Matrix>(M).singularValues();
  return sv(sv.size() - 1) <= rel_tol * sv(0);
}

/// Closed-form Jacobi fields along beta = 1/2, Delta = (0, I/sqrt 2) in St(4, 2).
inline std::array<Matrix, 5> reference_jacobi(double t) {
  const double r2 = std::sqrt(2.0);
  const double s = std::sin(t / r2);
  const double c = std::cos(t / r2);
  const double h = 0.5 * (t * c + r2 * s);
  auto m = [](std::initializer_list<double> v) {
    Matrix M(4, 2);
    auto it = v.begin();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 2; ++j) M(i, j) = *it++;
    }
    return M;
  };
  return {m({0, -h, h, 0, 0, -t * s / 2, t * s / 2, 0}),
          m({-t * s, 0, 0, -t * s, t * c, -r2 * s, r2 * s, t * c}),
          m({-t * s, 0, 0, -t * s, t * c, r2 * s, -r2 * s, t * c}),
          m({-t * s, -t * s, -t * s, t * s, t * c, t * c, t * c, -t * c}),
          m({t * s, -t * s, -t * s, -t * s, -t * c, t * c, t * c, t * c})};
}

/// Sectional curvature of a bi-invariant metric beta <X, Y>_F on so(n) for a
/// beta-orthonormal pair: (1/4) |[X, Y]|^2 in that metric.
inline double bi_invariant_curvature(double beta, const Matrix& X, const Matrix& Y) {
  const Matrix C = X * Y - Y * X;
  return 0.25 * beta * C.squaredNorm();
}

}  // namespace oracle
