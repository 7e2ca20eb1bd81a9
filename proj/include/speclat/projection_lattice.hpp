#pragma once

#include <span>

#include "speclat/numeric.hpp"

namespace speclat {

// The lattice P(C^n) of orthogonal projections.

/// p <= q, i.e. range(p) is contained in range(q): ||p - q p|| <= eps_proj.
template <typename Real>
bool proj_leq(const Projection<Real>& p, const Projection<Real>& q, const Tolerance<Real>& tol = {});

/// Projection onto the intersection of all ranges.
template <typename Real>
Projection<Real> proj_meet(std::span<const Projection<Real>> ps, const Tolerance<Real>& tol = {});

/// Projection onto the span of all ranges.
template <typename Real>
Projection<Real> proj_join(std::span<const Projection<Real>> ps, const Tolerance<Real>& tol = {});

template <typename Real>
Projection<Real> proj_meet(const Projection<Real>& p, const Projection<Real>& q,
                           const Tolerance<Real>& tol = {}) {
  const Projection<Real> both[] = {p, q};
  return proj_meet<Real>(std::span<const Projection<Real>>(both), tol);
}

template <typename Real>
Projection<Real> proj_join(const Projection<Real>& p, const Projection<Real>& q,
                           const Tolerance<Real>& tol = {}) {
  const Projection<Real> both[] = {p, q};
  return proj_join<Real>(std::span<const Projection<Real>>(both), tol);
}

/// 1 - p.
template <typename Real>
Projection<Real> proj_complement(const Projection<Real>& p);

/// Atomic means minimal nonzero, which in a matrix factor is rank one.
template <typename Real>
bool is_atomic(const Projection<Real>& p) {
  return p.rank() == 1;
}

/// Projections are compared entrywise; ranks must agree.
template <typename Real>
bool proj_equal(const Projection<Real>& p, const Projection<Real>& q, const Tolerance<Real>& tol = {}) {
  return p.dim() == q.dim() && p.rank() == q.rank() &&
         max_norm(p.matrix() - q.matrix()) <= tol.eps_proj;
}

}  // namespace speclat
