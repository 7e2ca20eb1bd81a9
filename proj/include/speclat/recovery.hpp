#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "speclat/isomorphism.hpp"

namespace speclat {

using ElementMap = std::function<DirectSumElement(const DirectSumElement&)>;
using FactorMap = std::function<Matrixd(const Matrixd&)>;

/// Black-box spectral order isomorphism between the cone sublattices of two
/// direct sums.  Both maps must be stateless.
struct OrderIsoOracle {
  BlockProfile domain;
  BlockProfile codomain;
  Cone cone = Cone::self_adjoint;
  ElementMap forward;
  ElementMap inverse;
};

/// Oracle backed by a concrete direct-sum isomorphism.
OrderIsoOracle make_oracle(const DirectSumIso& iso, const Toleranced& tol = {});

/// Raised when an oracle does not have the structure every spectral order
/// isomorphism of direct sums of factors must have.
class RecoveryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RecoveryOptions {
  std::size_t verify_samples = 50;
  double verify_tol = 1e-6;
  std::uint64_t seed = 1;
};

/// Block structure Phi((x_j)) = shift + (phi_{pi(k)}(x_{pi(k)}))_k.
struct Decomposition {
  Cone cone = Cone::self_adjoint;
  BlockProfile domain;
  BlockProfile codomain;
  std::vector<std::size_t> pi;     // pi[k] = domain block of codomain block k
  DirectSumElement shift;          // Phi(0); zero outside the self-adjoint case
  std::vector<FactorMap> factors;  // factors[j]: M_j -> N_{pi^-1(j)}
  double verification_residual = 0;
  std::size_t verified_samples = 0;

  std::size_t codomain_block(std::size_t j) const;
  DirectSumElement apply(const DirectSumElement& x) const;
};

/// Matches Phi(z_j) against the codomain central atoms w_k to obtain pi and
/// restricts Phi to single slots.
Decomposition decompose_effect_iso(const OrderIsoOracle& phi, const Toleranced& tol = {},
                                   const RecoveryOptions& options = {});
/// Same for positive cones, where Phi(lambda z_j) = f_j(lambda) w_k.
Decomposition decompose_positive_iso(const OrderIsoOracle& phi, const Toleranced& tol = {},
                                     const RecoveryOptions& options = {});
/// Self-adjoint case: normalises by the central element Phi(0) and checks
/// that positive and negative scalar multiples of z_j land in the same block.
Decomposition decompose_sa_iso(const OrderIsoOracle& phi, const Toleranced& tol = {},
                               const RecoveryOptions& options = {});
/// Dispatches on the oracle's cone.
Decomposition decompose_iso(const OrderIsoOracle& phi, const Toleranced& tol = {},
                            const RecoveryOptions& options = {});

struct ScalarSamples {
  std::vector<double> points;
  std::vector<double> values;
};

struct RecoveredCanonical {
  FactorCanonicalIso iso;
  ScalarSamples grid;  // f on the 129-point grid of the cone's scalar window
  std::string fit;     // "power" or "pl"
  double residual = 0; // max deviation of Theta_tau(f(x)) from phi(x) on samples
};

/// Recovers phi = Theta_tau o f for a single factor B(C^n): f from the scalar
/// action, tau from the images of complements of coordinate projections.
/// Throws RecoveryError when the result misses phi by more than eps_recon on
/// `options.verify_samples` random inputs.
RecoveredCanonical recover_factor_canonical(const FactorMap& phi, Index n, Cone cone,
                                            const Toleranced& tol = {}, const RecoveryOptions& options = {});

struct OrthoWitness {
  DirectSumElement x;
  DirectSumElement y;
  bool input_orthogonal = false;  // true: xy = 0 but Phi(x)Phi(y) != 0
  double input_product = 0;
  double image_product = 0;
};

struct OrthoReport {
  bool orthoisomorphism = true;
  std::size_t trials = 0;
  std::optional<OrthoWitness> witness;
};

/// Samples orthogonal and non-orthogonal pairs and stops at the first pair
/// whose orthogonality is not preserved.
OrthoReport is_orthoiso(const OrderIsoOracle& phi, std::size_t trials, std::uint64_t seed = 1,
                        const Toleranced& tol = {});

}  // namespace speclat
