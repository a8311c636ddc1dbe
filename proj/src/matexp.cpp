#include "stiefelgeo/matexp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <array>
#include <numeric>

namespace stiefelgeo {

namespace {

thread_local bool t_expm_fault = false;

constexpr std::array<double, 5> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0,
                                          5.371920351148152e0};

constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

double norm1(const Matrix& A) { return A.cwiseAbs().colwise().sum().maxCoeff(); }

Matrix solve_pade(const Matrix& U, const Matrix& V) {
  return (V - U).partialPivLu().solve(V + U);
}

// Low-order approximants: U = A * sum b_{2k+1} A^{2k}, V = sum b_{2k} A^{2k}.
template <std::size_t N>
Matrix pade_low(const Matrix& A, const std::array<double, N>& b) {
  const Eigen::Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  Matrix power = I;
  Matrix u = Matrix::Zero(n, n);
  Matrix v = Matrix::Zero(n, n);
  for (std::size_t k = 0; 2 * k + 1 < N; ++k) {
    v += b[2 * k] * power;
    u += b[2 * k + 1] * power;
    power = power * A2;
  }
  return solve_pade(A * u, v);
}

Matrix pade13(const Matrix& A) {
  const auto& b = kPade13;
  const Eigen::Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  const Matrix A4 = A2 * A2;
  const Matrix A6 = A4 * A2;
  const Matrix u_inner = A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
                         b[3] * A2 + b[1] * I;
  const Matrix U = A * u_inner;
  const Matrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 +
                   b[2] * A2 + b[0] * I;
  return solve_pade(U, V);
}

void require_square(const Matrix& X, const char* what) {
  if (X.rows() != X.cols()) {
    throw DimensionError(std::string(what) + ": matrix must be square, got " +
                         std::to_string(X.rows()) + "x" + std::to_string(X.cols()));
  }
  if (!X.allFinite()) {
    throw DomainError(std::string(what) + ": matrix has non-finite entries");
  }
}

// A normal matrix in real Schur form is block diagonal with 1x1 real
// eigenvalues and standardized 2x2 blocks [[a, b], [c, a]], b*c < 0.
struct RawBlock {
  Eigen::Index col = 0;
  int size = 1;
  double diag = 0.0;
  double rot = 0.0;  // (c - b) / 2 for 2x2 blocks
};

std::vector<RawBlock> split_blocks(const Matrix& T) {
  std::vector<RawBlock> blocks;
  const Eigen::Index n = T.rows();
  Eigen::Index i = 0;
  while (i < n) {
    if (i + 1 < n && T(i + 1, i) != 0.0) {
      blocks.push_back({i, 2, 0.5 * (T(i, i) + T(i + 1, i + 1)), 0.5 * (T(i + 1, i) - T(i, i + 1))});
      i += 2;
    } else {
      blocks.push_back({i, 1, T(i, i), 0.0});
      i += 1;
    }
  }
  return blocks;
}

// One 2x2 invariant subspace with a signed block parameter; the two columns
// of V spanning it are stored with the orientation already fixed.
struct Plane {
  Eigen::Index c0 = 0;
  Eigen::Index c1 = 0;
  bool flip = false;  // negate the second column
  double angle = 0.0;
  int k = 0;
  double key = 0.0;
};

Matrix assemble_frame(const Matrix& Z, const std::vector<Plane>& planes, Eigen::Index tail) {
  const Eigen::Index p = Z.rows();
  Matrix V(p, p);
  Eigen::Index out = 0;
  for (const auto& pl : planes) {
    V.col(out++) = Z.col(pl.c0);
    V.col(out++) = pl.flip ? Matrix(-Z.col(pl.c1)) : Matrix(Z.col(pl.c1));
  }
  if (tail >= 0) V.col(out) = Z.col(tail);
  return V;
}

void sort_planes(std::vector<Plane>& planes) {
  std::stable_sort(planes.begin(), planes.end(),
                   [](const Plane& a, const Plane& b) { return a.key > b.key; });
}

}  // namespace

Vector SchurSkewForm::magnitudes() const {
  Vector m(phi.size());
  for (Eigen::Index j = 0; j < phi.size(); ++j) m(j) = std::abs(phi(j) + kTwoPi * k(j));
  return m;
}

Matrix expm(const Matrix& X) {
  require_square(X, "expm");
  const Eigen::Index n = X.rows();
  if (n == 0) return Matrix(0, 0);
  const double nrm = norm1(X);
  if (nrm <= kTheta[0]) return pade_low(X, kPade3);
  if (nrm <= kTheta[1]) return pade_low(X, kPade5);
  if (nrm <= kTheta[2]) return pade_low(X, kPade7);
  if (nrm <= kTheta[3]) return pade_low(X, kPade9);

  int s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta[4]))));
  Matrix R = pade13(X / std::ldexp(1.0, s));
  if (t_expm_fault && s >= 1) --s;
  for (int i = 0; i < s; ++i) R = R * R;
  return R;
}

std::pair<Matrix, Matrix> expm_with_derivative(const Matrix& X, const Matrix& Y) {
  require_square(X, "dexpm");
  require_square(Y, "dexpm");
  if (X.rows() != Y.rows()) {
    throw DimensionError("dexpm: X and Y must have the same dimension");
  }
  const Eigen::Index n = X.rows();
  Matrix big = Matrix::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n) = X;
  big.topRightCorner(n, n) = Y;
  big.bottomRightCorner(n, n) = X;
  const Matrix E = expm(big);
  return {E.topLeftCorner(n, n), E.topRightCorner(n, n)};
}

Matrix dexpm(const Matrix& X, const Matrix& Y) { return expm_with_derivative(X, Y).second; }

Matrix build_G(const Vector& phi, int p) {
  if (p < 1 || phi.size() != p / 2) {
    throw DimensionError("build_G: angle count must be floor(p/2)");
  }
  Matrix G = Matrix::Identity(p, p);
  for (Eigen::Index j = 0; j < phi.size(); ++j) {
    const double c = std::cos(phi(j));
    const double s = std::sin(phi(j));
    G.block(2 * j, 2 * j, 2, 2) << c, -s, s, c;
  }
  return G;
}

Matrix build_Omega(const Vector& phi, const IntVector& k, int p) {
  if (p < 1 || phi.size() != p / 2 || k.size() != phi.size()) {
    throw DimensionError("build_Omega: angle and branch counts must be floor(p/2)");
  }
  Matrix W = Matrix::Zero(p, p);
  for (Eigen::Index j = 0; j < phi.size(); ++j) {
    const double theta = phi(j) + kTwoPi * k(j);
    W(2 * j, 2 * j + 1) = -theta;
    W(2 * j + 1, 2 * j) = theta;
  }
  return W;
}

SchurOrthForm schur_so(const Matrix& Q) {
  require_square(Q, "schur_so");
  const Eigen::Index p = Q.rows();
  if ((Q.transpose() * Q - Matrix::Identity(p, p)).norm() > 1e-10) {
    throw DomainError("schur_so: input is not orthogonal");
  }
  if (Q.determinant() < 0.0) {
    throw DomainError("schur_so: input has determinant -1");
  }

  if (p == 0) return {Matrix(0, 0), Vector(0)};
  Eigen::RealSchur<Matrix> rs(Q);
  const Matrix& T = rs.matrixT();
  const Matrix& Z = rs.matrixU();

  std::vector<Plane> planes;
  std::vector<Eigen::Index> plus;
  std::vector<Eigen::Index> minus;
  for (const auto& blk : split_blocks(T)) {
    if (blk.size == 2) {
      Plane pl{blk.col, blk.col + 1, blk.rot < 0.0, std::atan2(std::abs(blk.rot), blk.diag), 0, 0.0};
      planes.push_back(pl);
    } else if (blk.diag > 0.0) {
      plus.push_back(blk.col);
    } else {
      minus.push_back(blk.col);
    }
  }
  // Real eigenvalues -1 come in pairs (det +1); each pair is a rotation by pi.
  for (std::size_t i = 0; i + 1 < minus.size(); i += 2) {
    planes.push_back({minus[i], minus[i + 1], false, kPi, 0, 0.0});
  }
  for (std::size_t i = 0; i + 1 < plus.size(); i += 2) {
    planes.push_back({plus[i], plus[i + 1], false, 0.0, 0, 0.0});
  }
  const Eigen::Index tail = plus.size() % 2 == 1 ? plus.back() : -1;

  for (auto& pl : planes) {
    if (pl.angle > kPi - 1e-12) pl.angle = kPi;
    pl.key = pl.angle;
  }
  sort_planes(planes);

  SchurOrthForm out;
  out.V = assemble_frame(Z, planes, tail);
  out.phi.resize(static_cast<Eigen::Index>(planes.size()));
  for (std::size_t j = 0; j < planes.size(); ++j) out.phi(static_cast<Eigen::Index>(j)) = planes[j].angle;

  if (p > 0 && out.V.determinant() < 0.0) {
    if (p % 2 == 1) {
      out.V.col(p - 1) *= -1.0;
    } else {
      for (Eigen::Index j = 0; j < out.phi.size(); ++j) {
        if (out.phi(j) == 0.0 || out.phi(j) == kPi) {
          out.V.col(2 * j + 1) *= -1.0;
          break;
        }
      }
    }
  }
  return out;
}

SchurSkewForm schur_skew(const Matrix& A) {
  require_square(A, "schur_skew");
  if ((A + A.transpose()).norm() > 1e-10) {
    throw DomainError("schur_skew: input is not skew-symmetric");
  }

  if (A.rows() == 0) return {Matrix(0, 0), Vector(0), IntVector(0)};
  Eigen::RealSchur<Matrix> rs(skew_part(A));
  const Matrix& T = rs.matrixT();
  const Matrix& Z = rs.matrixU();

  std::vector<Plane> planes;
  std::vector<Eigen::Index> zeros;
  for (const auto& blk : split_blocks(T)) {
    if (blk.size == 1) {
      zeros.push_back(blk.col);
      continue;
    }
    const double theta = std::abs(blk.rot);
    bool flip = blk.rot < 0.0;
    double r = std::fmod(theta, kTwoPi);
    int k = static_cast<int>(std::floor(theta / kTwoPi));
    if (r > kTwoPi - 1e-12) {
      r = 0.0;
      k += 1;
    }
    double phi = 0.0;
    if (r <= kPi + 1e-12) {
      phi = std::min(r, kPi);
    } else {
      phi = kTwoPi - r;
      k = -(k + 1);
      flip = !flip;
    }
    planes.push_back({blk.col, blk.col + 1, flip, phi, k, theta});
  }
  for (std::size_t i = 0; i + 1 < zeros.size(); i += 2) {
    planes.push_back({zeros[i], zeros[i + 1], false, 0.0, 0, 0.0});
  }
  const Eigen::Index tail = zeros.size() % 2 == 1 ? zeros.back() : -1;
  sort_planes(planes);

  SchurSkewForm out;
  out.V = assemble_frame(Z, planes, tail);
  const auto m = static_cast<Eigen::Index>(planes.size());
  out.phi.resize(m);
  out.k.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    out.phi(j) = planes[static_cast<std::size_t>(j)].angle;
    out.k(j) = planes[static_cast<std::size_t>(j)].k;
  }
  return out;
}

std::vector<Matrix> expm_inverse_branches(const Matrix& Q, int k_max) {
  if (k_max < 0) throw DomainError("expm_inverse_branches: k_max must be nonnegative");
  const SchurOrthForm form = schur_so(Q);
  const auto p = static_cast<int>(Q.rows());
  const Eigen::Index m = form.phi.size();
  const int width = 2 * k_max + 1;

  std::size_t total = 1;
  for (Eigen::Index j = 0; j < m; ++j) total *= static_cast<std::size_t>(width);

  std::vector<Matrix> out;
  out.reserve(total);
  IntVector K(m);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (Eigen::Index j = m - 1; j >= 0; --j) {
      K(j) = static_cast<int>(rest % static_cast<std::size_t>(width)) - k_max;
      rest /= static_cast<std::size_t>(width);
    }
    Matrix L = form.V * build_Omega(form.phi, K, p) * form.V.transpose();
    L = skew_part(L);
    const bool seen = std::any_of(out.begin(), out.end(),
                                  [&](const Matrix& M) { return (M - L).norm() <= 1e-9; });
    if (!seen) out.push_back(std::move(L));
  }
  return out;
}

Matrix block_J(int m) {
  Matrix J = Matrix::Zero(2 * m, 2 * m);
  for (int j = 0; j < m; ++j) {
    J(2 * j, 2 * j + 1) = -1.0;
    J(2 * j + 1, 2 * j) = 1.0;
  }
  return J;
}

bool is_orthosymplectic(const Matrix& M, double tol) {
  require_square(M, "is_orthosymplectic");
  if (M.rows() % 2 != 0) {
    throw DimensionError("is_orthosymplectic: dimension must be even");
  }
  const Eigen::Index n = M.rows();
  const Matrix J = block_J(static_cast<int>(n / 2));
  const double orth = (M * M.transpose() - Matrix::Identity(n, n)).norm();
  const double comm = (M * J - J * M).norm();
  return orth <= tol && comm <= tol;
}

Vector skew_eigen_angles(const Matrix& A) {
  const SchurSkewForm form = schur_skew(A);
  Vector theta = form.magnitudes();
  std::sort(theta.begin(), theta.end(), std::greater<>());
  return theta;
}

namespace testing {

ScopedExpmFault::ScopedExpmFault() : previous_(t_expm_fault) { t_expm_fault = true; }
ScopedExpmFault::~ScopedExpmFault() { t_expm_fault = previous_; }

bool expm_fault_active() { return t_expm_fault; }
void set_expm_fault(bool active) { t_expm_fault = active; }

}  // namespace testing

}  // namespace stiefelgeo
