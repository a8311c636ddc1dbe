#pragma once

#include "stiefelgeo/types.hpp"

#include <cstdint>
#include <random>

namespace stiefelgeo {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; derives independent stream seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Matrix gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);
/// Gaussian entries, skew-symmetrized.
Matrix random_skew(Rng& rng, Eigen::Index p);
/// Haar-distributed element of SO(p).
Matrix random_rotation(Rng& rng, Eigen::Index p);

}  // namespace stiefelgeo
