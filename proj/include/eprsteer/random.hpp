#pragma once

#include <cstdint>
#include <random>

#include "eprsteer/linalg.hpp"

namespace eprsteer {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed of the independent stream `index` under `master`:
/// mix64(master ^ mix64(index)).
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

/// Uniform direction on the unit sphere.
BlochVector random_unit_vector(Rng& rng);

/// Haar-random element of SU(2) (uniform unit quaternion).
ComplexMatrix random_unitary(Rng& rng);

}  // namespace eprsteer
