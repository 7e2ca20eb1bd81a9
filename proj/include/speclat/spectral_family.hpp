#pragma once

#include <span>
#include <vector>

#include "speclat/numeric.hpp"

namespace speclat {

/// Bounded spectral family of a Hermitian matrix as a right-continuous step
/// function.
///
/// The family is 0 below `breakpoints.front()`, equals `cumulative[i]` on
/// [breakpoints[i], breakpoints[i+1]) and equals the identity from
/// `breakpoints.back()` on.  Storing the post-jump projection at each
/// breakpoint makes right-continuity hold by construction.
template <typename Real>
struct SpectralFamily {
  Index dim = 0;
  std::vector<Real> breakpoints;
  std::vector<Projection<Real>> cumulative;

  std::size_t size() const { return breakpoints.size(); }
};

using SpectralFamilyd = SpectralFamily<double>;

/// Checks monotonicity (strictly increasing ranks and nested ranges),
/// ascending breakpoints and a final identity.  Throws std::invalid_argument.
template <typename Real>
void validate(const SpectralFamily<Real>& f, const Tolerance<Real>& tol = {});

/// Breakpoints are the eigenvalue clusters (merged at their mean); the i-th
/// cumulative projection spans all eigenvectors up to cluster i.
template <typename Real>
SpectralFamily<Real> family_of(const Matrix<Real>& x, const Tolerance<Real>& tol = {});

/// sum_i lambda_i (P_i - P_{i-1}) with P_0 = 0.
template <typename Real>
Matrix<Real> element_of(const SpectralFamily<Real>& f, const Tolerance<Real>& tol = {});

template <typename Real>
Projection<Real> evaluate(const SpectralFamily<Real>& f, Real lambda);

/// Sorted union of all breakpoints.
template <typename Real>
std::vector<Real> merged_breakpoints(std::span<const SpectralFamily<Real>> fs);

/// Builds a family from a nondecreasing sequence of projections sampled at
/// ascending points, dropping samples that do not raise the rank.  The last
/// projection must be the identity.
template <typename Real>
SpectralFamily<Real> family_from_steps(Index dim, const std::vector<Real>& points,
                                       std::vector<Projection<Real>> projections);

}  // namespace speclat
