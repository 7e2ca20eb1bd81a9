#pragma once

#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "speclat/numeric-impl.hpp"
#include "speclat/projection_lattice.hpp"

namespace speclat {

namespace detail {

template <typename Real>
Index common_dim(std::span<const Projection<Real>> ps) {
  if (ps.empty()) throw std::invalid_argument("projection family is empty");
  const Index n = ps.front().dim();
  for (const auto& p : ps)
    if (p.dim() != n) throw std::invalid_argument("projection dimension mismatch");
  return n;
}

}  // namespace detail

template <typename Real>
bool proj_leq(const Projection<Real>& p, const Projection<Real>& q, const Tolerance<Real>& tol) {
  if (p.dim() != q.dim()) throw std::invalid_argument("proj_leq: dimension mismatch");
  if (p.rank() > q.rank()) return false;
  return max_norm(p.matrix() - q.matrix() * p.matrix()) <= tol.eps_proj;
}

template <typename Real>
Projection<Real> proj_meet(std::span<const Projection<Real>> ps, const Tolerance<Real>& tol) {
  const Index n = detail::common_dim(ps);

  // v lies in every range iff (1 - p_i) v = 0 for all i, so the meet is the
  // null space of the stacked complements.
  Index nontrivial = 0;
  const Projection<Real>* smallest = &ps.front();
  for (const auto& p : ps) {
    if (p.rank() == 0) return Projection<Real>::zero(n);
    if (p.rank() < n) ++nontrivial;
    if (p.rank() < smallest->rank()) smallest = &p;
  }
  if (nontrivial == 0) return Projection<Real>::identity(n);

  // Restricting to the smallest range keeps the problem small: x = B c with
  // (1 - p_i) B c = 0.
  const Matrix<Real>& base = smallest->basis();
  Matrix<Real> stacked(nontrivial * n, base.cols());
  Index row = 0;
  for (const auto& p : ps) {
    if (p.rank() == n) continue;
    stacked.middleRows(row, n) = base - p.matrix() * base;
    row += n;
  }
  Eigen::JacobiSVD<Matrix<Real>> svd(stacked, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  Index null_dim = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) <= tol.eps_proj) ++null_dim;
  if (null_dim == 0) return Projection<Real>::zero(n);
  Matrix<Real> coeffs = svd.matrixV().rightCols(null_dim);
  return orthonormal_range<Real>(base * coeffs, tol);
}

template <typename Real>
Projection<Real> proj_join(std::span<const Projection<Real>> ps, const Tolerance<Real>& tol) {
  const Index n = detail::common_dim(ps);
  Index total = 0;
  for (const auto& p : ps) {
    if (p.rank() == n) return Projection<Real>::identity(n);
    total += p.rank();
  }
  Matrix<Real> cols(n, total);
  Index c = 0;
  for (const auto& p : ps) {
    cols.middleCols(c, p.rank()) = p.basis();
    c += p.rank();
  }
  return orthonormal_range<Real>(cols, tol);
}

template <typename Real>
Projection<Real> proj_complement(const Projection<Real>& p) {
  const Index n = p.dim();
  const Index r = p.rank();
  if (r == 0) return Projection<Real>::identity(n);
  if (r == n) return Projection<Real>::zero(n);
  Eigen::HouseholderQR<Matrix<Real>> qr(p.basis());
  Matrix<Real> q = qr.householderQ() * Matrix<Real>::Identity(n, n);
  return Projection<Real>::from_orthonormal_basis(q.rightCols(n - r));
}

}  // namespace speclat
