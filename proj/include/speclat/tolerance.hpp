#pragma once

#include <stdexcept>

namespace speclat {

/// Numerical thresholds shared by every operation.
///
/// `eps_eig` is the absolute width used to merge eigenvalues into one
/// spectral breakpoint, `eps_proj` bounds residuals of projection tests
/// (idempotency, range containment, Hermiticity) and `eps_recon` bounds
/// reconstruction and element-equality residuals.
template <typename Real>
struct Tolerance {
  Real eps_eig = Real(1e-8);
  Real eps_proj = Real(1e-9);
  Real eps_recon = Real(1e-8);

  void validate() const {
    if (!(eps_eig > 0) || !(eps_proj > 0) || !(eps_recon > 0))
      throw std::invalid_argument("tolerances must be strictly positive");
    if (eps_eig < eps_proj)
      throw std::invalid_argument("eps_eig must not be smaller than eps_proj");
  }
};

using Toleranced = Tolerance<double>;

}  // namespace speclat
