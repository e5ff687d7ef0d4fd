#pragma once

#include <cstdint>
#include <random>

#include "geomq/projective.hpp"
#include "geomq/states.hpp"

namespace geomq {

// Seeded generators for randomized invariant checks and tests. All draws go
// through one engine so fixtures are reproducible from a single seed.

using RandomEngine = std::mt19937_64;

Matrix random_general(RandomEngine& rng, int dim, double scale = 1.0);

HermitianOperator random_hermitian(RandomEngine& rng, int dim,
                                   double scale = 1.0);

/// Haar-distributed unitary (QR of a Gaussian matrix with phase correction).
Matrix random_unitary(RandomEngine& rng, int dim);

/// exp(Z) for a random traceless Z: a well-conditioned element of SL(H).
Matrix random_sl(RandomEngine& rng, int dim, double scale = 0.3);

ProjectivePoint random_pure_point(RandomEngine& rng, int dim);

/// Mixture of `rank` random projectors with interior weights; resamples
/// until all kept eigenvalues clear the rank cutoff comfortably.
QuantumState random_density(RandomEngine& rng, int dim, int rank);

TangentVector random_horizontal_tangent(RandomEngine& rng,
                                        const ProjectivePoint& base,
                                        double scale = 1.0);

}  // namespace geomq
