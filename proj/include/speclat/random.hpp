#pragma once

#include <cstdint>
#include <random>

#include "speclat/isomorphism.hpp"

namespace speclat::random {

using Rng = std::mt19937_64;

/// Scalar window in which random elements of a cone place their spectrum:
/// [0, 1] for effects, [0, 2] for positives, [-2, 2] for the self-adjoint part.
std::pair<double, double> scalar_window(Cone cone);

Matrixd gaussian(Index rows, Index cols, Rng& rng);
Matrixd hermitian(Index n, Rng& rng);
/// Haar-distributed unitary (QR of a complex Gaussian with phase correction).
Matrixd unitary(Index n, Rng& rng);
Matrixd with_spectrum(const RealVectord& eigenvalues, const Matrixd& basis);
/// Random element whose spectrum lies in the cone's scalar window.
Matrixd in_cone(Index n, Cone cone, Rng& rng);
Projectiond projection(Index n, Index rank, Rng& rng);
/// Identity plus a random strictly upper-triangular part; never unitary for n >= 2.
Matrixd shear(Index n, Rng& rng);

/// Piecewise-linear bijection preserving the cone, with 1-3 interior knots at
/// least 0.15 apart inside the cone's scalar window.  `offset` is added to
/// every value (only meaningful for the self-adjoint part).
MonotoneBijection piecewise_linear(Cone cone, Rng& rng, double offset = 0);

DirectSumElement element(const BlockProfile& profile, Cone cone, Rng& rng);

struct IsoOptions {
  bool jordan = false;      // Jordan lattice part instead of Theta_tau
  bool shear = true;        // Theta_tau with a shear T rather than a unitary one
  bool antilinear = false;  // conjugate coordinates (transpose for Jordan maps)
  bool shift = false;       // self-adjoint case: random central value Phi(0)
};

/// Automorphism of the direct sum with a random dimension-preserving pi.
DirectSumIso direct_sum_iso(const BlockProfile& profile, Cone cone, Rng& rng, const IsoOptions& options = {});

}  // namespace speclat::random
