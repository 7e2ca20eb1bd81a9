#pragma once

#include <optional>
#include <span>

#include "speclat/block_profile.hpp"
#include "speclat/cone.hpp"
#include "speclat/monotone.hpp"
#include "speclat/numeric.hpp"
#include "speclat/spectral_family.hpp"

namespace speclat {

// Spectral order x <= y  <=>  E^y_lambda <= E^x_lambda for every lambda.
//
// Families are step functions, so every comparison reduces to a finite
// number of projection comparisons at merged breakpoints.

template <typename Real>
bool in_cone(const Matrix<Real>& x, Cone cone, const Tolerance<Real>& tol = {});

/// Throws std::invalid_argument unless x is Hermitian and inside the cone.
template <typename Real>
void require_cone(const Matrix<Real>& x, Cone cone, const Tolerance<Real>& tol = {},
                  const char* what = "element");

/// Max-norm equality within eps_recon.
template <typename Real>
bool elements_equal(const Matrix<Real>& x, const Matrix<Real>& y, const Tolerance<Real>& tol = {}) {
  return x.rows() == y.rows() && x.cols() == y.cols() && max_norm(x - y) <= tol.eps_recon;
}

/// Breakpoints closer than eps_eig are not distinguished: x is compared as
/// if shifted down by eps_eig.
template <typename Real>
bool spec_leq(const Matrix<Real>& x, const Matrix<Real>& y, const Tolerance<Real>& tol = {});

template <typename Real>
bool spec_leq(const SpectralFamily<Real>& fx, const SpectralFamily<Real>& fy,
              const Tolerance<Real>& tol = {});

/// Supremum: E_lambda = meet of the E^x_lambda.
template <typename Real>
Matrix<Real> spec_join(std::span<const Matrix<Real>> xs, Cone cone = Cone::self_adjoint,
                       const Tolerance<Real>& tol = {});

/// Infimum: E_lambda = meet over mu > lambda of the join of the E^x_mu.
template <typename Real>
Matrix<Real> spec_meet(std::span<const Matrix<Real>> xs, Cone cone = Cone::self_adjoint,
                       const Tolerance<Real>& tol = {});

template <typename Real>
Matrix<Real> spec_join(const Matrix<Real>& x, const Matrix<Real>& y, Cone cone = Cone::self_adjoint,
                       const Tolerance<Real>& tol = {}) {
  const Matrix<Real> both[] = {x, y};
  return spec_join<Real>(std::span<const Matrix<Real>>(both), cone, tol);
}

template <typename Real>
Matrix<Real> spec_meet(const Matrix<Real>& x, const Matrix<Real>& y, Cone cone = Cone::self_adjoint,
                       const Tolerance<Real>& tol = {}) {
  const Matrix<Real> both[] = {x, y};
  return spec_meet<Real>(std::span<const Matrix<Real>>(both), cone, tol);
}

template <typename Real>
struct PosNegParts {
  Matrix<Real> positive;
  Matrix<Real> negative;
};

/// x = x+ - x-, both positive, x+ x- = 0.
template <typename Real>
PosNegParts<Real> pos_neg_parts(const Matrix<Real>& x, const Tolerance<Real>& tol = {});

/// f(x): eigenvalues mapped through f, eigenprojections unchanged.  The
/// bijection must preserve the cone and x must lie in it.
template <typename Real>
Matrix<Real> apply_monotone(const MonotoneBijection& f, const Matrix<Real>& x,
                            Cone cone = Cone::self_adjoint, const Tolerance<Real>& tol = {});

template <typename Real>
struct ScalarAtom {
  Real scale;
  Projection<Real> atom;
};

/// Detects x = scale * e with e rank one (scale in (0, 1] for effects,
/// scale > 0 for positives).  Defined for the effect and positive cones only.
template <typename Real>
std::optional<ScalarAtom<Real>> atom_scalar_decompose(const Matrix<Real>& z, Cone cone,
                                                      const Tolerance<Real>& tol = {});

/// Block-diagonal with a real scalar multiple of the identity in each block.
template <typename Real>
bool is_central(const Matrix<Real>& z, const BlockProfile& profile, const Tolerance<Real>& tol = {});

/// Max-norm distance between z v (x ^ y) and (z v x) ^ (z v y).
template <typename Real>
Real distributive_residual(const Matrix<Real>& z, const Matrix<Real>& x, const Matrix<Real>& y,
                           Cone cone = Cone::self_adjoint, const Tolerance<Real>& tol = {});

template <typename Real>
bool distributive_check(const Matrix<Real>& z, const Matrix<Real>& x, const Matrix<Real>& y,
                        Cone cone = Cone::self_adjoint, const Tolerance<Real>& tol = {}) {
  return distributive_residual(z, x, y, cone, tol) <= tol.eps_recon;
}

}  // namespace speclat
