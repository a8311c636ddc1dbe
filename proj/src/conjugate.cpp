#include "stiefelgeo/conjugate.hpp"

#include "stiefelgeo/curvature.hpp"
#include "stiefelgeo/loops.hpp"
#include "stiefelgeo/matexp.hpp"
#include "stiefelgeo/parallel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <limits>

namespace stiefelgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double t_r_residual(double beta, double t) {
  return std::sin(t) / t + ((1.0 - beta) / beta) * std::cos(t);
}

Matrix jacobi_at(double beta, const TangentBlock& Delta, const Matrix& E, const Matrix& R,
                 const Matrix& Xt, const Matrix& At, const TangentBlock& W, double t) {
  const Eigen::Index p = Delta.p();
  const double c = 1.0 - 2.0 * beta;
  const Matrix XW = t * geodesic_generator(beta, W.A, W.B);
  const Matrix dE = dexpm(Xt, XW);
  const Matrix dR = dexpm(At, t * c * W.A);
  return Delta.Q() * (dE.leftCols(p) * R + E.leftCols(p) * dR);
}

struct JacobiSnapshot {
  double smin = 0.0;
  double smax = 0.0;
};

JacobiSnapshot jacobi_singular_values(double beta, const TangentBlock& Delta,
                                      const std::vector<TangentBlock>& basis, double t) {
  const Matrix Xt = t * geodesic_generator(beta, Delta.A, Delta.B);
  const Matrix At = t * (1.0 - 2.0 * beta) * Delta.A;
  const Matrix E = expm(Xt);
  const Matrix R = expm(At);
  const Eigen::Index rows = Delta.n() * Delta.p();
  Matrix M(rows, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Matrix J = jacobi_at(beta, Delta, E, R, Xt, At, basis[i], t);
    M.col(static_cast<Eigen::Index>(i)) = J.reshaped();
  }
  const Vector s = Eigen::JacobiSVD<Matrix>(M).singularValues();
  return {s(s.size() - 1), s(0)};
}

double relative_sigma(double beta, const TangentBlock& Delta, const std::vector<TangentBlock>& basis,
                      double t) {
  const JacobiSnapshot s = jacobi_singular_values(beta, Delta, basis, t);
  return s.smax > 0.0 ? s.smin / s.smax : 0.0;
}

}  // namespace

double t_beta_r(double beta) {
  (void)Beta(beta);
  const double step = kPi / 64.0;
  double lo = 0.0;
  double flo = 1.0 / beta;
  for (int k = 1; k <= 128; ++k) {
    const double hi = k * step;
    const double fhi = t_r_residual(beta, hi);
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) != (fhi > 0.0)) {
      double a = lo > 0.0 ? lo : 1e-300;
      double b = hi;
      double fa = flo;
      for (int it = 0; it < 200 && b - a > 2.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = t_r_residual(beta, m);
        if (fm == 0.0) return m;
        if ((fa > 0.0) == (fm > 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return std::abs(t_r_residual(beta, a)) <= std::abs(t_r_residual(beta, b)) ? a : b;
    }
    lo = hi;
    flo = fhi;
  }
  throw DomainError("t_beta_r: no root found in (0, 2 pi] for beta = " + std::to_string(beta));
}

std::pair<double, double> conjugate_radius_bounds(double beta, int n, int p) {
  const CurvatureBound K = curvature_bound(beta, n, p);
  const double lo = kPi / std::sqrt(K.value);
  double hi = kInf;
  if (p == 1) {
    hi = kPi;
  } else if (p == n) {
    if (n == 3) hi = std::sqrt(8.0 * beta) * kPi;
    if (n >= 4) hi = std::sqrt(4.0 * beta) * kPi;
  } else if (p <= n - 2) {
    hi = std::sqrt(2.0) * t_beta_r(beta);
  }
  return {lo, hi};
}

const char* to_string(InjectivityKind kind) {
  switch (kind) {
    case InjectivityKind::Exact:
      return "Exact";
    case InjectivityKind::Interval:
      return "Interval";
    case InjectivityKind::UpperBound:
      return "UpperBound";
  }
  return "?";
}

InjectivityResult injectivity_radius(double beta, int n, int p) {
  (void)Beta(beta);
  if (n < 2 || p < 1 || p > n) throw DimensionError("injectivity_radius: need n >= 2 and 1 <= p <= n");
  const double root2b = std::sqrt(2.0 * beta) * kPi;

  auto exact = [&](double v, const char* label) {
    return InjectivityResult{beta, n, p, InjectivityKind::Exact, v, v, v, label, std::nullopt};
  };

  if (p == 1) return exact(kPi, "sphere");
  if (p == n) return exact(root2b, "orthogonal-group");
  if (beta > 1.0) {
    return {beta, n, p, InjectivityKind::UpperBound, kPi, 0.0, kPi, "beta-gt-1", kPi};
  }
  if (p == n - 1) return exact(beta < 0.5 ? root2b : kPi, "p=n-1");
  if (beta <= 1.0 / 3.0) return exact(root2b, "general-low-beta");
  if (beta >= 2.0 / 3.0) return exact(kPi, "general-high-beta");

  const auto [lo, conj_hi] = conjugate_radius_bounds(beta, n, p);
  const double hi = std::min(loop_length_bound(beta) / 2.0, conj_hi);
  const double conjectured = std::min({root2b, kPi, std::sqrt(2.0) * t_beta_r(beta)});
  return {beta, n, p, InjectivityKind::Interval, hi, lo, hi, "general-mid-beta", conjectured};
}

Matrix jacobi_field(double beta, const TangentBlock& Delta, const TangentBlock& W, double t) {
  (void)Beta(beta);
  if (W.n() != Delta.n() || W.p() != Delta.p()) {
    throw DimensionError("jacobi_field: Delta and W must have the same shape");
  }
  if ((W.base.U() - Delta.base.U()).norm() > 1e-12 || (W.frame - Delta.frame).norm() > 1e-12) {
    throw DimensionError("jacobi_field: Delta and W must share base point and frame");
  }
  const Matrix Xt = t * geodesic_generator(beta, Delta.A, Delta.B);
  const Matrix At = t * (1.0 - 2.0 * beta) * Delta.A;
  return jacobi_at(beta, Delta, expm(Xt), expm(At), Xt, At, W, t);
}

std::array<Matrix, 5> jacobi_basis_42(double t) {
  const double r2 = std::sqrt(2.0);
  const double s = std::sin(t / r2);
  const double c = std::cos(t / r2);
  const double ts = t * s;
  const double tc = t * c;
  const double h = 0.5 * (tc + r2 * s);
  std::array<Matrix, 5> J;
  for (auto& m : J) m.resize(4, 2);
  J[0] << 0.0, -h, h, 0.0, 0.0, -0.5 * ts, 0.5 * ts, 0.0;
  J[1] << -ts, 0.0, 0.0, -ts, tc, -r2 * s, r2 * s, tc;
  J[2] << -ts, 0.0, 0.0, -ts, tc, r2 * s, -r2 * s, tc;
  J[3] << -ts, -ts, -ts, ts, tc, tc, tc, -tc;
  J[4] << ts, -ts, -ts, -ts, -tc, tc, tc, tc;
  return J;
}

std::vector<TangentBlock> jacobi_directions_42() {
  const Matrix Z = Matrix::Zero(2, 2);
  Matrix J2(2, 2);
  J2 << 0.0, -1.0, 1.0, 0.0;
  Matrix b2(2, 2), b3(2, 2), b4(2, 2), b5(2, 2);
  b2 << 1.0, -1.0, 1.0, 1.0;
  b3 << 1.0, 1.0, -1.0, 1.0;
  b4 << 1.0, 1.0, 1.0, -1.0;
  b5 << -1.0, 1.0, 1.0, 1.0;
  return {TangentBlock::at_identity(J2, Z), TangentBlock::at_identity(Z, b2),
          TangentBlock::at_identity(Z, b3), TangentBlock::at_identity(Z, b4),
          TangentBlock::at_identity(Z, b5)};
}

std::vector<TangentBlock> tangent_basis(double beta, const TangentBlock& at) {
  const Eigen::Index p = at.p();
  const Eigen::Index m = at.n() - p;
  const double scale = 1.0 / std::sqrt(2.0 * beta);
  std::vector<TangentBlock> basis;
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      Matrix A = Matrix::Zero(p, p);
      A(i, j) = scale;
      A(j, i) = -scale;
      basis.push_back(at.with(A, Matrix::Zero(m, p)));
    }
  }
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) {
      Matrix B = Matrix::Zero(m, p);
      B(i, j) = 1.0;
      basis.push_back(at.with(Matrix::Zero(p, p), B));
    }
  }
  return basis;
}

ConjugateResult first_conjugate_time(double beta, const TangentBlock& Delta, double t_max,
                                     double grid_step, double tol) {
  (void)Beta(beta);
  if (!(t_max > 0.0)) throw DomainError("first_conjugate_time: t_max must be positive");
  if (Delta.A.norm() == 0.0 && Delta.B.norm() == 0.0) {
    throw DomainError("first_conjugate_time: zero tangent");
  }
  if (!(grid_step > 0.0)) grid_step = t_max / 512.0;
  if (!(tol > 0.0)) throw DomainError("first_conjugate_time: tol must be positive");

  const std::vector<TangentBlock> basis = tangent_basis(beta, Delta);
  const auto count = static_cast<std::size_t>(std::ceil(t_max / grid_step - 1e-12));

  ConjugateResult out;
  out.scan.beta = beta;
  out.scan.t.resize(count);
  out.scan.sigma_min.resize(count);
  out.scan.ratio.resize(count);
  parallel_for(count, [&](std::size_t k) {
    const double t = std::min(t_max, static_cast<double>(k + 1) * grid_step);
    const JacobiSnapshot s = jacobi_singular_values(beta, Delta, basis, t);
    out.scan.t[k] = t;
    out.scan.sigma_min[k] = s.smin / t;
    out.scan.ratio[k] = s.smax > 0.0 ? s.smin / s.smax : 0.0;
  });

  const auto& r = out.scan.ratio;
  const auto& ts = out.scan.t;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t k = 0; k < count; ++k) {
    const double left = k == 0 ? kInf : r[k - 1];
    const double right = k + 1 == count ? kInf : r[k + 1];
    if (!(r[k] <= left && r[k] <= right)) continue;

    double a = k == 0 ? 0.5 * ts[0] : ts[k - 1];
    double b = k + 1 == count ? ts[k] : ts[k + 1];
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = relative_sigma(beta, Delta, basis, x1);
    double f2 = relative_sigma(beta, Delta, basis, x2);
    while (b - a > 1e-10) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = relative_sigma(beta, Delta, basis, x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = relative_sigma(beta, Delta, basis, x2);
      }
    }
    const double tstar = 0.5 * (a + b);
    if (relative_sigma(beta, Delta, basis, tstar) <= tol) out.scan.roots.push_back(tstar);
  }
  if (!out.scan.roots.empty()) {
    out.t_first = out.scan.roots.front();
    out.distance = *out.t_first * beta_norm(beta, Delta);
  }
  return out;
}

bool on_conjugate_criterion(const Matrix& A, double tol) {
  Vector theta = skew_eigen_angles(A);
  if (A.rows() % 2 == 1) {
    theta.conservativeResize(theta.size() + 1);
    theta(theta.size() - 1) = 0.0;
  }
  auto hits = [tol](double v) {
    const double l = std::round(v / kTwoPi);
    return l != 0.0 && std::abs(v - kTwoPi * l) <= tol;
  };
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    for (Eigen::Index j = i + 1; j < theta.size(); ++j) {
      if (hits(theta(i) + theta(j)) || hits(theta(i) - theta(j))) return true;
    }
  }
  return false;
}

}  // namespace stiefelgeo
