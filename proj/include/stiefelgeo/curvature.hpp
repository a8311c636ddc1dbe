#pragma once

#include "stiefelgeo/stiefel.hpp"

#include <cstdint>
#include <string>
#include <utility>

namespace stiefelgeo {

/// Block norms of a section: alpha_i = ||A_i||, eta_i = ||B_i||, omega = ||B1^T B2 - B2^T B1||.
struct SectionStats {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double omega = 0.0;
};

SectionStats section_stats(const TangentBlock& E1, const TangentBlock& E2);

/// Gram-Schmidt in the beta inner product. Throws DegenerateSection when the
/// Gram determinant of the unit-normalized pair is below 1e-14.
std::pair<TangentBlock, TangentBlock> orthonormalize_section(double beta, const TangentBlock& D1,
                                                             const TangentBlock& D2);

/// Sectional curvature of a beta-orthonormal pair. Throws DomainError when the
/// beta-Gram matrix deviates from I_2 by more than 1e-8.
double sectional_curvature(double beta, const TangentBlock& E1, const TangentBlock& E2);

/// The four-term curvature expression on raw blocks, no orthonormality check.
double sectional_curvature_blocks(double beta, const Matrix& A1, const Matrix& B1, const Matrix& A2,
                                  const Matrix& B2);

/// Global upper bound of the sectional curvature together with the case that produced it.
struct CurvatureBound {
  double beta = 0.0;
  int n = 0;
  int p = 0;
  double value = 0.0;
  std::string regime;
};

/// Piecewise bound:
///   p = 1                      -> 1 (unit sphere)
///   p = n                      -> 1/(4 beta), any beta > 0
///   beta <= (4 - sqrt 10)/6    -> 1/(4 beta)
///   beta <= 2/3                -> (4 - 3 beta)/2
///   2/3 <= beta <= 1           -> 1
///   p = n - 1, 1/3 < beta < 2/3: min of the above with 1/(2 beta)
/// Throws UnsupportedRegime for beta > 1 with 2 <= p <= n - 1.
CurvatureBound curvature_bound(double beta, int n, int p);

/// (4 - sqrt 10) / 6, where the 1/(4 beta) and (4 - 3 beta)/2 branches meet.
inline const double kLowBetaKink = (4.0 - std::sqrt(10.0)) / 6.0;

struct CurvatureSearchResult {
  double best_value = 0.0;
  TangentBlock best_e1;
  TangentBlock best_e2;
  std::size_t samples = 0;
  double best_random = 0.0;  ///< best value before ascent
};

/// Random sampling of beta-orthonormal sections followed by finite-difference
/// gradient ascent from the `n_ascent` best samples (200 steps each, initial
/// step 1e-2, halved on non-improvement). Deterministic for a fixed seed.
CurvatureSearchResult max_curvature_search(double beta, int n, int p, std::size_t n_random,
                                           int n_ascent, std::uint64_t seed, int ascent_steps = 200);

/// The section A1 = A2 = 0, B1 = e1 e1^T, B2 = e2 e1^T at I_{n x p}; curvature 1 for every beta.
std::pair<TangentBlock, TangentBlock> sharp_section(int n, int p);

}  // namespace stiefelgeo
