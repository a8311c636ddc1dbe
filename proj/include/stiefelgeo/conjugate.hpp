#pragma once

#include "stiefelgeo/stiefel.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stiefelgeo {

/// First positive root of sin(t)/t + ((1 - beta)/beta) cos(t).
/// Bracketed by a scan of step pi/64 over (0, 2 pi], then bisected.
double t_beta_r(double beta);

/// Lower and upper bounds on the conjugate radius at I_{n x p}.
///   lo = pi / sqrt(K_beta)
///   hi = sqrt(2) t_beta_r(beta)  for 2 <= p <= n - 2
///        pi                      for p = 1
///        sqrt(8 beta) pi         for p = n = 3
///        sqrt(4 beta) pi         for p = n >= 4
///        +inf                    otherwise (p = n - 1, p = n = 2)
std::pair<double, double> conjugate_radius_bounds(double beta, int n, int p);

enum class InjectivityKind { Exact, Interval, UpperBound };

const char* to_string(InjectivityKind kind);

struct InjectivityResult {
  double beta = 0.0;
  int n = 0;
  int p = 0;
  InjectivityKind kind = InjectivityKind::Exact;
  double value = 0.0;  ///< Exact value or upper bound
  double lo = 0.0;     ///< Interval endpoints (equal to value otherwise)
  double hi = 0.0;
  std::string case_label;  ///< sphere | orthogonal-group | p=n-1 | general-low-beta | ...
  std::optional<double> conjectured;  ///< conjectured exact value where only bounds are proven
};

InjectivityResult injectivity_radius(double beta, int n, int p);

/// Jacobi field along gamma(t) = Exp(t Delta) with J(0) = 0 and J'(0) = W, as an
/// ambient n x p matrix; Delta and W must share base point and frame.
Matrix jacobi_field(double beta, const TangentBlock& Delta, const TangentBlock& W, double t);

/// Closed-form Jacobi fields J_1..J_5 along beta = 1/2, (n, p) = (4, 2),
/// Delta = (A = 0, B = I / sqrt 2), for the directions
/// W_1 = (J_2, 0), W_2 = (0, [[1,-1],[1,1]]), W_3 = (0, [[1,1],[-1,1]]),
/// W_4 = (0, [[1,1],[1,-1]]), W_5 = (0, [[-1,1],[1,1]]).
std::array<Matrix, 5> jacobi_basis_42(double t);

/// The directions W_1..W_5 paired with jacobi_basis_42, at I_{4 x 2}.
std::vector<TangentBlock> jacobi_directions_42();

/// A beta-orthonormal coordinate basis of T_{base} St(n, p): scaled elementary
/// skews for A, then elementary matrices for B.
std::vector<TangentBlock> tangent_basis(double beta, const TangentBlock& at);

struct ConjugateScan {
  double beta = 0.0;
  std::vector<double> t;
  std::vector<double> sigma_min;  ///< sigma_min(M(t)) / t
  std::vector<double> ratio;      ///< sigma_min(M(t)) / sigma_max(M(t))
  std::vector<double> roots;      ///< refined conjugate times, ascending
};

struct ConjugateResult {
  std::optional<double> t_first;
  double distance = 0.0;  ///< t_first * ||Delta||_beta, 0 when none
  ConjugateScan scan;
};

/// Tracks the relative smallest singular value of the stacked Jacobi matrix
/// over (0, t_max] on a grid (default step t_max / 512), refines each local
/// minimum by golden-section search to 1e-10 in t, and reports the first one
/// whose relative singular value is at most `tol`.
ConjugateResult first_conjugate_time(double beta, const TangentBlock& Delta, double t_max,
                                     double grid_step = 0.0, double tol = 1e-6);

/// Rank-deficiency criterion of D expm at a skew matrix: some pair of eigen-angles
/// (a zero angle appended when n is odd) satisfies theta_i +- theta_j = 2 pi l, l != 0.
bool on_conjugate_criterion(const Matrix& A, double tol = 1e-9);

}  // namespace stiefelgeo
