#pragma once

#include "stiefelgeo/stiefel.hpp"

#include <optional>
#include <string>

namespace stiefelgeo {

/// Length of a shortest nontrivial geodesic loop: min(sqrt(2 beta), 1) * 2 pi.
double loop_length_bound(double beta);

/// Block data of a loop on the reduced (2p, p) problem.
struct LoopBlocks {
  Matrix E11;
  Matrix E22;
  Vector phi1;
  Vector phi2;
  double off_diagonal = 0.0;  ///< ||E12||_F
  double inverse = 0.0;       ///< ||E11 expm((1 - 2 beta) A) - I||_F
  std::string reduction;      ///< "none", "qr" or "zero-pad"
};

struct LoopCertificate {
  double beta = 0.0;
  TangentBlock delta;
  double t_L = 0.0;
  double residual = 0.0;  ///< ||gamma(t_L) - gamma(0)||_F
  double length = 0.0;    ///< t_L * ||Delta||_beta
  bool is_loop = false;
  double tol = 0.0;
  std::optional<LoopBlocks> blocks;
};

enum class LoopKind { BLoop, ALoop };

/// Parses "a"/"b" (also "A-loop"/"B-loop"); throws DomainError otherwise.
LoopKind parse_loop_kind(const std::string& s);

/// B-loop: A = 0, B(0,0) = 2 pi (needs p <= n - 1), length 2 pi.
/// A-loop: A = 2 pi J_2 in the leading block, B = 0 (needs p >= 2), length sqrt(2 beta) 2 pi.
/// Both close at t_L = 1; block data is attached.
LoopCertificate canonical_loop(double beta, int n, int p, LoopKind kind, double tol = 1e-9);

/// Evaluates gamma(t_L) and records the closure residual; block data is
/// attached whenever the curve closes.
LoopCertificate verify_loop(double beta, const TangentBlock& Delta, double t_L, double tol = 1e-9);

/// Splits E = expm([[2 beta A, -B^T], [B, 0]]) of a loop closing at t = 1.
/// B is first reduced to p x p: thin QR when n - p > p, zero rows appended when n - p < p.
/// Throws NotALoop when the closure residual exceeds 1e-8.
LoopBlocks loop_block_structure(double beta, const TangentBlock& Delta);

struct InterlacingResult {
  bool ok = false;
  double margin = 0.0;  ///< min_j sigma_j(X) - (2 beta / (2 beta - 1)) sigma_j((1 - 2 beta) A)
};

/// Singular-value interlacing of the generator against its scaled A block.
/// Requires beta > 1/2.
InterlacingResult interlacing_check(double beta, const Matrix& A, const Matrix& B);

/// 2 pi / ||gamma''(0)||_E for a tangent of unit Euclidean norm.
double euclidean_loop_floor(double beta, const TangentBlock& Delta);

/// Right-hand side of the Euclidean second-derivative estimate for a unit-speed tangent:
/// 1 + (1 - 4 beta + 2 beta^2) ||B||^2 ||A||^2 - ||A||^4 / 2.
double acceleration_bound_sq(double beta, const Matrix& A, const Matrix& B);

/// (2 pi)^2 (1 + (beta - 1) a^2) / (1 + (1 - 4 beta + 2 beta^2) a^2 + (-3/2 + 4 beta - 2 beta^2) a^4),
/// a lower bound on the squared beta-length of a loop with Euclidean-unit A-block norm a in [0, 1].
double beta_ratio_floor(double beta, double alpha);

}  // namespace stiefelgeo
