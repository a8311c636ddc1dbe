#include "stiefelgeo/check.hpp"

#include "stiefelgeo/conjugate.hpp"
#include "stiefelgeo/curvature.hpp"
#include "stiefelgeo/loops.hpp"
#include "stiefelgeo/matexp.hpp"
#include "stiefelgeo/parallel.hpp"
#include "stiefelgeo/sampling.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <functional>
#include <limits>
#include <map>

namespace stiefelgeo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class Invariant {
 public:
  Invariant(std::string suite, std::string name, double tol)
      : suite_(std::move(suite)), name_(std::move(name)), tol_(tol) {}

  /// Nonnegative error that must stay within the tolerance.
  void error(double e) { record(std::isnan(e) ? kNegInf : tol_ - e); }
  /// Inequality slack (>= 0 when satisfied) with the tolerance as allowed deficit.
  void slack(double s) { record(std::isnan(s) ? kNegInf : s + tol_); }
  void holds(bool ok) { record(ok ? tol_ : kNegInf); }
  void fail(const std::string& what) {
    worst_ = kNegInf;
    error_ = what;
  }

  [[nodiscard]] InvariantResult result() const {
    return {suite_, name_, samples_, worst_, samples_ > 0 && worst_ >= 0.0 && error_.empty(), error_};
  }

 private:
  void record(double margin) {
    ++samples_;
    worst_ = std::min(worst_, margin);
  }

  std::string suite_;
  std::string name_;
  double tol_;
  std::size_t samples_ = 0;
  double worst_ = std::numeric_limits<double>::infinity();
  std::string error_;
};

class SuiteRunner {
 public:
  SuiteRunner(std::string suite, std::uint64_t seed) : suite_(std::move(suite)), seed_(seed) {}

  void run(const std::string& name, double tol, const std::function<void(Invariant&, Rng&)>& body) {
    Invariant inv(suite_, name, tol);
    Rng rng(derive_seed(seed_, results_.size()));
    try {
      body(inv, rng);
    } catch (const std::exception& e) {
      inv.fail(e.what());
    }
    results_.push_back(inv.result());
  }

  std::vector<InvariantResult> take() { return std::move(results_); }

 private:
  std::string suite_;
  std::uint64_t seed_;
  std::vector<InvariantResult> results_;
};

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}


TangentBlock random_tangent(Rng& rng, int n, int p) {
  return TangentBlock::at_identity(random_skew(rng, p), gaussian_matrix(rng, n - p, p));
}

TangentBlock conjugate_tangent(const TangentBlock& D, const Matrix& V1, const Matrix& V2) {
  return TangentBlock::at_identity(V1.transpose() * D.A * V1, V2.transpose() * D.B * V1);
}

// ---------------------------------------------------------------- matexp

std::vector<InvariantResult> suite_matexp(std::uint64_t seed) {
  SuiteRunner s("matexp", seed);

  s.run("expm-skew-orthogonal", 1e-12, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 120; ++i) {
      const int d = 1 + i % 20;
      const Matrix A = (1.0 + i % 4) * random_skew(rng, d);
      const Matrix Q = expm(A);
      inv.error((Q.transpose() * Q - Matrix::Identity(d, d)).norm());
      inv.holds(Q.determinant() > 0.0);
    }
  });

  s.run("dexpm-finite-difference", 1e-7, [](Invariant& inv, Rng& rng) {
    const double h = 1e-5;
    for (int i = 0; i < 200; ++i) {
      const int d = 1 + i % 8;
      const Matrix X = gaussian_matrix(rng, d, d) / std::sqrt(static_cast<double>(d));
      const Matrix Y = gaussian_matrix(rng, d, d);
      const Matrix D = dexpm(X, Y);
      const Matrix fd = (expm(X + h * Y) - expm(X - h * Y)) / (2.0 * h);
      inv.error((D - fd).norm() / std::max(1.0, D.norm()));
    }
  });

  s.run("schur-so-reconstruction", 1e-10, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 100; ++i) {
      const int p = 2 + i % 7;
      Vector phi0(p / 2);
      for (Eigen::Index j = 0; j < phi0.size(); ++j) phi0(j) = uniform(rng, 0.0, kPi);
      if (i % 5 == 0 && phi0.size() > 1) phi0(1) = phi0(0);
      const Matrix V0 = random_rotation(rng, p);
      const Matrix Q = V0 * build_G(phi0, p) * V0.transpose();
      const SchurOrthForm f = schur_so(Q);
      inv.error((f.V * build_G(f.phi, p) * f.V.transpose() - Q).norm());
      Vector sorted = phi0;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      inv.error(1e-2 * (f.phi - sorted).cwiseAbs().maxCoeff());
      inv.holds(std::is_sorted(f.phi.begin(), f.phi.end(), std::greater<>()));
    }
  });

  s.run("schur-skew-reconstruction", 1e-10, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 100; ++i) {
      const int p = 1 + i % 9;
      const Matrix A = (1.0 + i % 6) * random_skew(rng, p);
      const SchurSkewForm f = schur_skew(A);
      inv.error((f.V * build_Omega(f.phi, f.k, p) * f.V.transpose() - A).norm());
      inv.holds((f.phi.array() >= 0.0).all() && (f.phi.array() <= kPi).all());
    }
  });

  s.run("expm-inverse-branches", 1e-9, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 30; ++i) {
      const int p = 2 + i % 4;
      const Matrix Q = random_rotation(rng, p);
      const auto branches = expm_inverse_branches(Q, 1);
      std::size_t expected = 1;
      for (int j = 0; j < p / 2; ++j) expected *= 3;
      inv.holds(branches.size() == expected);
      for (const auto& X : branches) {
        inv.error((expm(X) - Q).norm());
        inv.error((X + X.transpose()).norm());
      }
    }
  });

  s.run("orthosymplectic-closure", 1e-10, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 50; ++i) {
      const int m = 1 + i % 4;
      const Matrix J = block_J(m);
      auto generate = [&]() {
        const Matrix S = random_skew(rng, 2 * m);
        return expm(0.5 * (S - J * S * J));
      };
      const Matrix M1 = generate();
      const Matrix M2 = generate();
      inv.holds(is_orthosymplectic(M1, 1e-10) && is_orthosymplectic(M2, 1e-10));
      const Matrix P = M1 * M2;
      inv.error(std::max((P * P.transpose() - Matrix::Identity(2 * m, 2 * m)).norm(),
                         (P * J - J * P).norm()));
    }
  });

  return s.take();
}

// ---------------------------------------------------------------- stiefel

std::vector<InvariantResult> suite_stiefel(std::uint64_t seed) {
  SuiteRunner s("stiefel", seed);

  s.run("manifold-preservation", 1e-10, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 40; ++i) {
      const int n = 2 + i % 6;
      const int p = 1 + i % n;
      const double beta = uniform(rng, 0.05, 3.0);
      TangentBlock D = random_tangent(rng, n, p);
      const double nrm = beta_norm(beta, D);
      if (nrm == 0.0) continue;
      D = D.scaled(uniform(rng, 0.1, 4.0 * kPi) / nrm);
      for (int k = 0; k < 8; ++k) {
        const Matrix U = geodesic(beta, D, uniform(rng, 0.0, 4.0 * kPi)).U();
        inv.error((U.transpose() * U - Matrix::Identity(p, p)).norm());
      }
    }
  });

  s.run("constant-ambient-derivative-norms", 1e-8, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 15; ++i) {
      const int n = 3 + i % 4;
      const int p = 1 + i % (n - 1);
      const double beta = uniform(rng, 0.1, 2.0);
      const TangentBlock D = random_tangent(rng, n, p);
      std::vector<double> v, a;
      for (int k = 0; k < 50; ++k) {
        const GeodesicDerivatives g = geodesic_derivatives(beta, D, 0.2 * k);
        v.push_back(g.velocity.norm());
        a.push_back(g.acceleration.norm());
      }
      for (const auto* series : {&v, &a}) {
        double mean = 0.0;
        for (double x : *series) mean += x;
        mean /= static_cast<double>(series->size());
        double var = 0.0;
        for (double x : *series) var += (x - mean) * (x - mean);
        inv.error(std::sqrt(var / static_cast<double>(series->size())));
      }
    }
  });

  s.run("homogeneity", 1e-10, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 30; ++i) {
      const int n = 2 + i % 6;
      const int p = 1 + i % n;
      const double beta = uniform(rng, 0.1, 2.0);
      const Matrix Q = random_rotation(rng, n);
      const TangentBlock at_id = random_tangent(rng, n, p);
      const TangentBlock moved(at_id.A, at_id.B, StiefelPoint(Q.leftCols(p)), Q.rightCols(n - p));
      const double t = uniform(rng, 0.0, 3.0);
      inv.error((geodesic(beta, moved, t).U() - Q * geodesic(beta, at_id, t).U()).norm());
    }
  });

  s.run("second-derivative-closed-form", 1e-10, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 60; ++i) {
      const int n = 2 + i % 6;
      const int p = 1 + i % n;
      const double beta = uniform(rng, 0.05, 3.0);
      const TangentBlock D = random_tangent(rng, n, p);
      const double direct = geodesic_derivatives(beta, D, uniform(rng, 0.0, 2.0)).acceleration.squaredNorm();
      const double closed = acceleration_norm_sq(beta, D.A, D.B);
      inv.error(std::abs(direct - closed) / std::max(1.0, closed));
    }
  });

  s.run("second-derivative-bound", 1e-10, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 1000; ++i) {
      const int n = 2 + i % 6;
      const int p = 1 + i % n;
      const double beta = uniform(rng, 0.02, 3.0);
      TangentBlock D = random_tangent(rng, n, p);
      const double e = std::sqrt(D.A.squaredNorm() + D.B.squaredNorm());
      if (e == 0.0) continue;
      D = D.scaled(1.0 / e);
      inv.slack(acceleration_bound_sq(beta, D.A, D.B) - acceleration_norm_sq(beta, D.A, D.B));
    }
  });

  return s.take();
}

// ---------------------------------------------------------------- curvature

std::vector<InvariantResult> suite_curvature(std::uint64_t seed) {
  SuiteRunner s("curvature", seed);
  const std::vector<std::pair<int, int>> shapes = {{4, 2}, {5, 2}, {5, 3}, {6, 4}, {5, 4}, {6, 6}};

  s.run("bound-enforcement", 1e-8, [&](Invariant& inv, Rng& rng) {
    for (int b = 1; b <= 10; ++b) {
      const double beta = 0.1 * b;
      for (const auto& [n, p] : shapes) {
        const double bound = curvature_bound(beta, n, p).value;
        const auto res = max_curvature_search(beta, n, p, 2000, 0, rng());
        inv.slack(bound - res.best_value);
      }
    }
  });

  s.run("section-stats", 1e-10, [&](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 600; ++i) {
      const auto& [n, p] = shapes[static_cast<std::size_t>(i) % shapes.size()];
      const double beta = 0.1 * (1 + i % 10);
      const auto [E1, E2] = orthonormalize_section(beta, random_tangent(rng, n, p), random_tangent(rng, n, p));
      const SectionStats st = section_stats(E1, E2);
      inv.error(std::abs(beta * st.alpha1 * st.alpha1 + st.eta1 * st.eta1 - 1.0));
      inv.error(std::abs(beta * st.alpha2 * st.alpha2 + st.eta2 * st.eta2 - 1.0));
      inv.slack(std::sqrt(2.0) * st.eta1 * st.eta2 - st.omega);
    }
  });

  s.run("basis-invariance", 1e-9, [&](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 200; ++i) {
      const auto& [n, p] = shapes[static_cast<std::size_t>(i) % shapes.size()];
      const double beta = uniform(rng, 0.05, 1.0);
      const auto [E1, E2] = orthonormalize_section(beta, random_tangent(rng, n, p), random_tangent(rng, n, p));
      const double th = uniform(rng, 0.0, kTwoPi);
      const TangentBlock F1 = std::cos(th) * E1 + std::sin(th) * E2;
      const TangentBlock F2 = (-std::sin(th)) * E1 + std::cos(th) * E2;
      const double k0 = sectional_curvature(beta, E1, E2);
      inv.error(std::abs(sectional_curvature(beta, F1, F2) - k0));
      inv.error(std::abs(sectional_curvature(beta, E2, E1) - k0));
    }
  });

  s.run("sharp-section", 1e-12, [](Invariant& inv, Rng&) {
    for (const auto& [n, p] : std::vector<std::pair<int, int>>{{4, 2}, {6, 3}, {7, 2}, {8, 5}}) {
      const auto [E1, E2] = sharp_section(n, p);
      for (int b = 1; b <= 20; ++b) {
        inv.error(std::abs(sectional_curvature(0.05 * b, E1, E2) - 1.0));
      }
    }
  });

  return s.take();
}

// ---------------------------------------------------------------- loops

std::vector<LoopCertificate> sample_loops(Rng& rng) {
  std::vector<LoopCertificate> out;
  const std::vector<double> betas = {0.1, 0.25, 0.5, 0.75, 1.0, 2.5, 5.0};
  const std::vector<std::pair<int, int>> shapes = {{3, 2}, {4, 2}, {5, 3}, {6, 3}, {5, 4}};
  for (double beta : betas) {
    for (const auto& [n, p] : shapes) {
      out.push_back(canonical_loop(beta, n, p, LoopKind::BLoop));
      out.push_back(canonical_loop(beta, n, p, LoopKind::ALoop));
      const Matrix V1 = random_rotation(rng, p);
      const Matrix V2 = random_rotation(rng, n - p);
      out.push_back(verify_loop(beta, conjugate_tangent(out[out.size() - 2].delta, V1, V2), 1.0));
    }
  }
  return out;
}

bool angles_contained(const Vector& phi2, const Vector& phi1, double tol) {
  for (double a : phi2) {
    if (a <= tol) continue;
    const bool found = std::any_of(phi1.begin(), phi1.end(), [&](double b) { return std::abs(a - b) <= tol; });
    if (!found) return false;
  }
  return true;
}

std::vector<InvariantResult> suite_loops(std::uint64_t seed) {
  SuiteRunner s("loops", seed);
  Rng loop_rng(derive_seed(seed, 1000));
  std::vector<LoopCertificate> loops;
  std::string loop_error;
  try {
    loops = sample_loops(loop_rng);
  } catch (const std::exception& e) {
    loop_error = e.what();
  }
  auto guard = [&] {
    if (!loop_error.empty()) throw Error(loop_error);
  };

  s.run("canonical-loop-closure", 1e-9, [&](Invariant& inv, Rng&) {
    guard();
    for (const auto& c : loops) {
      inv.error(c.residual);
      inv.holds(c.is_loop);
    }
  });

  s.run("canonical-loop-length", 1e-12, [&](Invariant& inv, Rng&) {
    guard();
    for (const auto& c : loops) {
      const bool a_loop = c.delta.B.norm() == 0.0;
      const double expected = a_loop ? std::sqrt(2.0 * c.beta) * kTwoPi : kTwoPi;
      inv.error(std::abs(c.length - expected) / expected);
    }
  });

  s.run("no-loop-below-bound", 1e-6, [&](Invariant& inv, Rng&) {
    guard();
    for (const auto& c : loops) {
      if (c.is_loop) inv.slack(c.length - loop_length_bound(c.beta));
    }
  });

  s.run("block-structure", 1e-8, [&](Invariant& inv, Rng&) {
    guard();
    for (const auto& c : loops) {
      if (!c.is_loop) continue;
      if (!c.blocks) throw Error("verified loop without block data");
      inv.error(c.blocks->off_diagonal);
      inv.error(c.blocks->inverse);
      inv.holds(angles_contained(c.blocks->phi2, c.blocks->phi1, 1e-8));
    }
  });

  s.run("zero-padding-embedding", 1e-12, [&](Invariant& inv, Rng& rng) {
    for (double beta : {0.25, 0.5, 2.5}) {
      for (int p : {2, 3}) {
        const LoopCertificate base = canonical_loop(beta, 2 * p, p, LoopKind::BLoop);
        const Matrix V1 = random_rotation(rng, p);
        const Matrix V2 = random_rotation(rng, p);
        const TangentBlock rotated = conjugate_tangent(base.delta, V1, V2);
        const LoopCertificate small = verify_loop(beta, rotated, 1.0);
        for (int extra = 1; extra <= 2; ++extra) {
          Matrix B = Matrix::Zero(p + extra, p);
          B.topRows(p) = rotated.B;
          const LoopCertificate big = verify_loop(beta, TangentBlock::at_identity(rotated.A, B), 1.0);
          inv.error(std::abs(big.residual - small.residual));
          inv.error(std::abs(big.length - small.length));
        }
      }
    }
  });

  s.run("conjugation-invariance", 1e-10, [&](Invariant& inv, Rng& rng) {
    for (double beta : {0.3, 0.5, 1.0, 4.0}) {
      for (const auto& [n, p] : std::vector<std::pair<int, int>>{{4, 2}, {5, 3}, {6, 2}}) {
        const TangentBlock D = random_tangent(rng, n, p);
        const TangentBlock R = conjugate_tangent(D, random_rotation(rng, p), random_rotation(rng, n - p));
        inv.error(std::abs(geodesic_length(beta, D, 1.0) - geodesic_length(beta, R, 1.0)));
        const LoopCertificate c = canonical_loop(beta, n, p, LoopKind::BLoop);
        const TangentBlock Rc = conjugate_tangent(c.delta, random_rotation(rng, p), random_rotation(rng, n - p));
        const LoopCertificate rc = verify_loop(beta, Rc, 1.0);
        inv.error(std::abs(rc.residual - c.residual));
        inv.error(std::abs(rc.length - c.length));
      }
    }
  });

  s.run("beta-ratio-floor", 1e-9, [](Invariant& inv, Rng&) {
    for (int i = 1; i <= 40; ++i) {
      const double beta = 0.05 * i;
      for (int j = 0; j <= 24; ++j) {
        const double alpha = j / 24.0;
        inv.slack(beta_ratio_floor(beta, alpha) - std::min(2.0 * beta, 1.0) * kTwoPi * kTwoPi);
      }
    }
  });

  s.run("interlacing", 1e-10, [](Invariant& inv, Rng& rng) {
    for (double beta : {2.5, 5.0, 10.0}) {
      for (int i = 0; i < 500; ++i) {
        const int p = 1 + i % 5;
        const int m = 1 + (i / 5) % 5;
        const InterlacingResult r =
            interlacing_check(beta, random_skew(rng, p), gaussian_matrix(rng, m, p));
        inv.slack(r.margin);
      }
    }
  });

  s.run("euclidean-loop-floor", 1e-9, [&](Invariant& inv, Rng& rng) {
    guard();
    for (const auto& c : loops) {
      if (!c.is_loop) continue;
      const double e = c.delta.ambient().norm() * c.t_L;
      const TangentBlock unit = c.delta.scaled(1.0 / c.delta.ambient().norm());
      inv.slack(e - euclidean_loop_floor(c.beta, unit));
    }
    for (int i = 0; i < 200; ++i) {
      const int n = 3 + i % 4;
      const int p = 1 + i % (n - 1);
      const double beta = uniform(rng, 0.05, 3.0);
      TangentBlock D = random_tangent(rng, n, p);
      D = D.scaled(1.0 / D.ambient().norm());
      const double bound = acceleration_bound_sq(beta, D.A, D.B);
      if (bound > 0.0) inv.slack(euclidean_loop_floor(beta, D) - kTwoPi / std::sqrt(bound));
    }
  });

  return s.take();
}

// ---------------------------------------------------------------- conjugate

bool rank_deficient_dexpm(const Matrix& A) {
  const Eigen::Index n = A.rows();
  Matrix M(n * n, n * (n - 1) / 2);
  Eigen::Index col = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      Matrix E = Matrix::Zero(n, n);
      E(i, j) = -1.0;
      E(j, i) = 1.0;
      M.col(col++) = dexpm(A, E).reshaped();
    }
  }
  const Vector sv = Eigen::JacobiSVD<Matrix>(M).singularValues();
  return sv(sv.size() - 1) <= 1e-7 * sv(0);
}

Matrix skew_with_angles(Rng& rng, int n, const std::vector<double>& theta) {
  Matrix D = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < theta.size(); ++j) {
    const auto k = static_cast<Eigen::Index>(2 * j);
    D(k, k + 1) = -theta[j];
    D(k + 1, k) = theta[j];
  }
  const Matrix V = random_rotation(rng, n);
  return skew_part(V * D * V.transpose());
}

std::vector<InvariantResult> suite_conjugate(std::uint64_t seed) {
  SuiteRunner s("conjugate", seed);

  s.run("jacobi-linearity", 1e-9, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 30; ++i) {
      const int n = 3 + i % 4;
      const int p = 1 + i % (n - 1);
      const double beta = uniform(rng, 0.2, 2.0);
      const TangentBlock D = random_tangent(rng, n, p);
      const TangentBlock W1 = random_tangent(rng, n, p);
      const TangentBlock W2 = random_tangent(rng, n, p);
      const double a = uniform(rng, -2.0, 2.0);
      const double b = uniform(rng, -2.0, 2.0);
      const double t = uniform(rng, 0.1, 3.0);
      const Matrix lhs = jacobi_field(beta, D, a * W1 + b * W2, t);
      const Matrix rhs = a * jacobi_field(beta, D, W1, t) + b * jacobi_field(beta, D, W2, t);
      inv.error((lhs - rhs).norm() / std::max(1.0, rhs.norm()));
    }
  });

  s.run("radial-field", 1e-9, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 20; ++i) {
      const int n = 3 + i % 4;
      const int p = 1 + i % (n - 1);
      const double beta = uniform(rng, 0.2, 2.0);
      const TangentBlock D = random_tangent(rng, n, p);
      for (int k = 0; k <= 6; ++k) {
        const double t = 0.5 * k;
        const Matrix J = jacobi_field(beta, D, D, t);
        inv.error((J - t * geodesic_derivatives(beta, D, t).velocity).norm());
      }
    }
  });

  s.run("closed-form-jacobi", 1e-9, [](Invariant& inv, Rng&) {
    const TangentBlock D = TangentBlock::at_identity(Matrix::Zero(2, 2), Matrix::Identity(2, 2) / std::sqrt(2.0));
    const auto W = jacobi_directions_42();
    for (double t : {0.5, 1.0, 2.0}) {
      const auto J = jacobi_basis_42(t);
      for (std::size_t i = 0; i < 5; ++i) inv.error((jacobi_field(0.5, D, W[i], t) - J[i]).cwiseAbs().maxCoeff());
    }
  });

  s.run("conjugate-time-chain", 1e-6, [](Invariant& inv, Rng&) {
    const TangentBlock D = TangentBlock::at_identity(Matrix::Zero(2, 2), Matrix::Identity(2, 2) / std::sqrt(2.0));
    const ConjugateResult r = first_conjugate_time(0.5, D, 4.0);
    if (!r.t_first) throw Error("no conjugate point found");
    const double target = std::sqrt(2.0) * t_beta_r(0.5);
    inv.error(std::abs(*r.t_first - target));
    inv.error(std::abs(*r.t_first - conjugate_radius_bounds(0.5, 4, 2).second));
  });

  s.run("radius-ordering", 1e-10, [](Invariant& inv, Rng&) {
    const std::vector<std::pair<int, int>> shapes = {{4, 2}, {5, 2}, {6, 3}, {5, 4}, {3, 1}, {4, 4}};
    for (int b = 1; b <= 100; ++b) {
      const double beta = 0.01 * b;
      for (const auto& [n, p] : shapes) {
        const auto [lo, hi] = conjugate_radius_bounds(beta, n, p);
        inv.slack(hi - lo);
        const InjectivityResult r = injectivity_radius(beta, n, p);
        if (p >= 2 && p <= n - 1) inv.slack(loop_length_bound(beta) / 2.0 - r.hi);
        inv.slack(r.hi - r.lo);
      }
    }
  });

  s.run("criterion-vs-rank-test", 0.0, [](Invariant& inv, Rng& rng) {
    for (int i = 0; i < 100; ++i) {
      const int n = i % 2 == 0 ? 4 : 6;
      Matrix A;
      if (i < 20) {
        const int kind = i % 4;
        std::vector<double> th;
        if (kind == 0) th = {kPi, kPi};
        if (kind == 1) th = {kTwoPi, 0.0};
        if (kind == 2) {
          const double x = uniform(rng, 0.3, 2.5);
          th = {kTwoPi - x, x};
        }
        if (kind == 3) {
          const double x = uniform(rng, 0.3, 2.5);
          th = {x + kTwoPi, x};
        }
        if (n == 6) th.push_back(uniform(rng, 0.1, 1.0));
        A = skew_with_angles(rng, n, th);
      } else {
        A = uniform(rng, 0.5, 3.0) * random_skew(rng, n);
      }
      inv.holds(on_conjugate_criterion(A) == rank_deficient_dexpm(A));
    }
  });

  return s.take();
}

using SuiteFn = std::vector<InvariantResult> (*)(std::uint64_t);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table = {{"matexp", &suite_matexp},
                                                       {"stiefel", &suite_stiefel},
                                                       {"curvature", &suite_curvature},
                                                       {"loops", &suite_loops},
                                                       {"conjugate", &suite_conjugate}};
  return table;
}

}  // namespace

bool CheckReport::passed() const {
  return std::all_of(invariants.begin(), invariants.end(), [](const auto& r) { return r.passed; });
}

nlohmann::ordered_json CheckReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["suites"] = suites;
  j["passed"] = passed();
  j["invariants"] = nlohmann::ordered_json::array();
  for (const auto& r : invariants) {
    nlohmann::ordered_json e;
    e["suite"] = r.suite;
    e["name"] = r.name;
    e["samples"] = r.samples;
    e["worst_margin"] = r.worst_margin;
    e["passed"] = r.passed;
    if (!r.error.empty()) e["error"] = r.error;
    j["invariants"].push_back(e);
  }
  return j;
}

const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names = {"matexp", "stiefel", "curvature", "loops", "conjugate"};
  return names;
}

CheckReport run_checks(const std::string& suite, std::uint64_t seed) {
  std::vector<std::string> selected;
  if (suite == "all") {
    selected = check_suite_names();
  } else if (suite_table().count(suite) != 0) {
    selected = {suite};
  } else {
    throw DomainError("unknown check suite '" + suite + "'");
  }

  std::vector<std::vector<InvariantResult>> parts(selected.size());
  parallel_for(selected.size(), [&](std::size_t i) {
    const auto& names = check_suite_names();
    const auto idx = static_cast<std::uint64_t>(
        std::find(names.begin(), names.end(), selected[i]) - names.begin());
    parts[i] = suite_table().at(selected[i])(derive_seed(seed, idx));
  });

  CheckReport report;
  report.seed = seed;
  report.suites = selected;
  for (auto& part : parts) {
    for (auto& r : part) report.invariants.push_back(std::move(r));
  }
  return report;
}

}  // namespace stiefelgeo
