#include "stiefelgeo/curvature.hpp"

#include "stiefelgeo/parallel.hpp"
#include "stiefelgeo/sampling.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace stiefelgeo {

namespace {

// Isometric coordinates of T_{I} St_beta(n, p): sqrt(2 beta) a_ij (i < j), then vec(B).
// The beta inner product becomes the Euclidean one.
struct Coords {
  int n;
  int p;
  double scale;
  Eigen::Index dim;

  Coords(double beta, int n_, int p_)
      : n(n_), p(p_), scale(std::sqrt(2.0 * beta)), dim(p_ * (p_ - 1) / 2 + (n_ - p_) * p_) {}

  [[nodiscard]] Vector encode(const Matrix& A, const Matrix& B) const {
    Vector x(dim);
    Eigen::Index k = 0;
    for (int j = 0; j < p; ++j) {
      for (int i = 0; i < j; ++i) x(k++) = scale * A(i, j);
    }
    for (int j = 0; j < p; ++j) {
      for (int i = 0; i < n - p; ++i) x(k++) = B(i, j);
    }
    return x;
  }

  void decode(const Vector& x, Matrix& A, Matrix& B) const {
    A.setZero(p, p);
    B.resize(n - p, p);
    Eigen::Index k = 0;
    for (int j = 0; j < p; ++j) {
      for (int i = 0; i < j; ++i) {
        A(i, j) = x(k++) / scale;
        A(j, i) = -A(i, j);
      }
    }
    for (int j = 0; j < p; ++j) {
      for (int i = 0; i < n - p; ++i) B(i, j) = x(k++);
    }
  }
};

bool gram_schmidt(Vector& x1, Vector& x2) {
  const double n1 = x1.norm();
  const double n2 = x2.norm();
  if (n1 == 0.0 || n2 == 0.0) return false;
  const double c = x1.dot(x2) / (n1 * n2);
  if (1.0 - c * c < 1e-14) return false;
  x1 /= n1;
  x2 -= x1.dot(x2) * x1;
  x2 /= x2.norm();
  return true;
}

struct Evaluator {
  double beta;
  Coords coords;
  Matrix A1, B1, A2, B2;

  Evaluator(double b, int n, int p) : beta(b), coords(b, n, p) {}

  double operator()(const Vector& x1, const Vector& x2) {
    coords.decode(x1, A1, B1);
    coords.decode(x2, A2, B2);
    return sectional_curvature_blocks(beta, A1, B1, A2, B2);
  }

  // Curvature of the plane spanned by (x1, x2); -inf when degenerate.
  double plane(Vector x1, Vector x2) {
    if (!gram_schmidt(x1, x2)) return -std::numeric_limits<double>::infinity();
    return (*this)(x1, x2);
  }
};

struct Candidate {
  double value;
  std::size_t index;
  Vector x1;
  Vector x2;
};

bool better(const Candidate& a, const Candidate& b) {
  return a.value > b.value || (a.value == b.value && a.index < b.index);
}

void keep_top(std::vector<Candidate>& top, Candidate c, std::size_t k) {
  if (k == 0) return;
  if (top.size() == k && !better(c, top.back())) return;
  top.push_back(std::move(c));
  std::sort(top.begin(), top.end(), better);
  if (top.size() > k) top.pop_back();
}

Candidate ascend(Evaluator& eval, Candidate start, int steps) {
  const Eigen::Index d = start.x1.size();
  Vector z(2 * d);
  z << start.x1, start.x2;
  double fz = start.value;
  double step = 1e-2;
  const double h = 1e-6;
  Vector grad(2 * d);
  for (int it = 0; it < steps && step > 1e-12; ++it) {
    for (Eigen::Index i = 0; i < 2 * d; ++i) {
      Vector zp = z;
      Vector zm = z;
      zp(i) += h;
      zm(i) -= h;
      grad(i) = (eval.plane(zp.head(d), zp.tail(d)) - eval.plane(zm.head(d), zm.tail(d))) / (2 * h);
    }
    const double gn = grad.norm();
    if (!(gn > 0.0) || !std::isfinite(gn)) break;
    Vector y1 = z.head(d) + step * grad.head(d) / gn;
    Vector y2 = z.tail(d) + step * grad.tail(d) / gn;
    if (!gram_schmidt(y1, y2)) {
      step *= 0.5;
      continue;
    }
    const double fy = eval(y1, y2);
    if (fy > fz) {
      z << y1, y2;
      fz = fy;
    } else {
      step *= 0.5;
    }
  }
  return {fz, start.index, z.head(d), z.tail(d)};
}

}  // namespace

SectionStats section_stats(const TangentBlock& E1, const TangentBlock& E2) {
  SectionStats s;
  s.alpha1 = E1.A.norm();
  s.alpha2 = E2.A.norm();
  s.eta1 = E1.B.norm();
  s.eta2 = E2.B.norm();
  s.omega = (E1.B.transpose() * E2.B - E2.B.transpose() * E1.B).norm();
  return s;
}

std::pair<TangentBlock, TangentBlock> orthonormalize_section(double beta, const TangentBlock& D1,
                                                             const TangentBlock& D2) {
  const double n1 = beta_norm(beta, D1);
  const double n2 = beta_norm(beta, D2);
  if (n1 == 0.0 || n2 == 0.0) throw DegenerateSection("section contains a zero tangent");
  const double c = metric(beta, D1, D2) / (n1 * n2);
  if (1.0 - c * c < 1e-14) throw DegenerateSection("tangents are linearly dependent");
  const TangentBlock E1 = D1.scaled(1.0 / n1);
  const TangentBlock R = D2 + (-metric(beta, D2, E1)) * E1;
  return {E1, R.scaled(1.0 / beta_norm(beta, R))};
}

double sectional_curvature_blocks(double beta, const Matrix& A1, const Matrix& B1, const Matrix& A2,
                                  const Matrix& B2) {
  const Matrix skewB = B1.transpose() * B2 - B2.transpose() * B1;
  const double t1 = 0.5 * (B1 * B2.transpose() - B2 * B1.transpose()).squaredNorm();
  const double c = 1.0 - 2.0 * beta;
  const double t2 = 0.5 * c * c * c * skewB.squaredNorm();
  const double t3 = beta * beta * (B1 * A2 - B2 * A1).squaredNorm();
  const Matrix comm = A1 * A2 - A2 * A1;
  const double t4 = 0.25 * beta * (comm - (3.0 - 4.0 * beta) * skewB).squaredNorm();
  return t1 + t2 + t3 + t4;
}

double sectional_curvature(double beta, const TangentBlock& E1, const TangentBlock& E2) {
  (void)Beta(beta);
  const double g11 = metric(beta, E1, E1);
  const double g22 = metric(beta, E2, E2);
  const double g12 = metric(beta, E1, E2);
  const double residual = std::max({std::abs(g11 - 1.0), std::abs(g22 - 1.0), std::abs(g12)});
  if (residual > 1e-8) {
    throw DomainError("sectional_curvature: pair is not beta-orthonormal (residual " +
                      std::to_string(residual) + ")");
  }
  return sectional_curvature_blocks(beta, E1.A, E1.B, E2.A, E2.B);
}

CurvatureBound curvature_bound(double beta, int n, int p) {
  (void)Beta(beta);
  if (p < 1 || n < p) throw DimensionError("curvature_bound: need 1 <= p <= n");
  if (n * p - p * (p + 1) / 2 < 2) {
    throw DimensionError("curvature_bound: manifold dimension is below 2");
  }
  CurvatureBound b{beta, n, p, 0.0, ""};
  if (p == 1) {
    b.value = 1.0;
    b.regime = "sphere";
    return b;
  }
  if (p == n) {
    b.value = 1.0 / (4.0 * beta);
    b.regime = "orthogonal-group";
    return b;
  }
  if (beta > 1.0) {
    throw UnsupportedRegime("no curvature bound is known for beta > 1 with 2 <= p <= n-1");
  }
  if (beta <= kLowBetaKink) {
    b.value = 1.0 / (4.0 * beta);
    b.regime = "low-beta";
  } else if (beta <= 2.0 / 3.0) {
    b.value = (4.0 - 3.0 * beta) / 2.0;
    b.regime = "mid-beta";
  } else {
    b.value = 1.0;
    b.regime = "high-beta";
  }
  if (p == n - 1 && beta > 1.0 / 3.0 && beta < 2.0 / 3.0) {
    const double refined = 1.0 / (2.0 * beta);
    if (refined < b.value) {
      b.value = refined;
      b.regime = "codim-one";
    }
  }
  return b;
}

CurvatureSearchResult max_curvature_search(double beta, int n, int p, std::size_t n_random,
                                           int n_ascent, std::uint64_t seed, int ascent_steps) {
  (void)curvature_bound(beta, n, p);
  const Coords coords(beta, n, p);
  if (coords.dim < 2) throw DimensionError("max_curvature_search: manifold dimension is below 2");

  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (n_random + kChunk - 1) / kChunk;
  const std::size_t keep = static_cast<std::size_t>(std::max(1, n_ascent));
  std::vector<std::vector<Candidate>> tops(chunks);

  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    Evaluator eval(beta, n, p);
    std::vector<Candidate> top;
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(n_random, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      Vector x1 = coords.encode(random_skew(rng, p), gaussian_matrix(rng, n - p, p));
      Vector x2 = coords.encode(random_skew(rng, p), gaussian_matrix(rng, n - p, p));
      if (!gram_schmidt(x1, x2)) continue;
      const double v = eval(x1, x2);
      keep_top(top, {v, i, std::move(x1), std::move(x2)}, keep);
    }
    tops[c] = std::move(top);
  });

  std::vector<Candidate> merged;
  for (auto& t : tops) {
    for (auto& cand : t) keep_top(merged, std::move(cand), keep);
  }
  if (merged.empty()) throw DegenerateSection("max_curvature_search: no valid samples");
  const double best_random = merged.front().value;

  std::vector<Candidate> refined(merged.size());
  if (n_ascent > 0) {
    parallel_for(merged.size(), [&](std::size_t i) {
      Evaluator eval(beta, n, p);
      refined[i] = ascend(eval, merged[i], ascent_steps);
    });
  } else {
    refined = merged;
  }
  Candidate best = merged.front();
  for (const auto& r : refined) {
    if (better(r, best)) best = r;
  }

  Matrix A1, B1, A2, B2;
  coords.decode(best.x1, A1, B1);
  coords.decode(best.x2, A2, B2);
  return {best.value, TangentBlock::at_identity(A1, B1), TangentBlock::at_identity(A2, B2),
          n_random, best_random};
}

std::pair<TangentBlock, TangentBlock> sharp_section(int n, int p) {
  if (n < 4 || p < 2 || n - p < 2) {
    throw DimensionError("sharp_section: need n >= 4, p >= 2 and n - p >= 2");
  }
  const Matrix A = Matrix::Zero(p, p);
  Matrix B1 = Matrix::Zero(n - p, p);
  Matrix B2 = Matrix::Zero(n - p, p);
  B1(0, 0) = 1.0;
  B2(1, 0) = 1.0;
  return {TangentBlock::at_identity(A, B1), TangentBlock::at_identity(A, B2)};
}

}  // namespace stiefelgeo
