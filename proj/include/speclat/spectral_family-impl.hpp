#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "speclat/numeric-impl.hpp"
#include "speclat/projection_lattice-impl.hpp"
#include "speclat/spectral_family.hpp"

namespace speclat {

template <typename Real>
void validate(const SpectralFamily<Real>& f, const Tolerance<Real>& tol) {
  if (f.dim <= 0) throw std::invalid_argument("spectral family has dimension 0");
  if (f.breakpoints.empty() || f.breakpoints.size() != f.cumulative.size())
    throw std::invalid_argument("spectral family needs one projection per breakpoint");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.cumulative[i].dim() != f.dim)
      throw std::invalid_argument("spectral family projection has wrong dimension");
    if (i == 0) continue;
    if (!(f.breakpoints[i] > f.breakpoints[i - 1]))
      throw std::invalid_argument("spectral family breakpoints are not strictly ascending");
    if (f.cumulative[i].rank() <= f.cumulative[i - 1].rank() ||
        !proj_leq(f.cumulative[i - 1], f.cumulative[i], tol))
      throw std::invalid_argument("spectral family is not strictly increasing at breakpoint " +
                                  std::to_string(i));
  }
  if (f.cumulative.back().rank() != f.dim)
    throw std::invalid_argument("spectral family does not end at the identity");
}

template <typename Real>
SpectralFamily<Real> family_of(const Matrix<Real>& x, const Tolerance<Real>& tol) {
  const EigenSystem<Real> es = eigh(x, tol);
  SpectralFamily<Real> f;
  f.dim = x.rows();
  for (const auto& [first, last] : es.clusters) {
    f.breakpoints.push_back(es.values.segment(first, last - first).mean());
    f.cumulative.push_back(Projection<Real>::from_orthonormal_basis(es.vectors.leftCols(last)));
  }
  return f;
}

template <typename Real>
Matrix<Real> element_of(const SpectralFamily<Real>& f, const Tolerance<Real>& tol) {
  validate(f, tol);
  Matrix<Real> x = Matrix<Real>::Zero(f.dim, f.dim);
  const Matrix<Real>* previous = nullptr;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Matrix<Real>& p = f.cumulative[i].matrix();
    if (previous)
      x += f.breakpoints[i] * (p - *previous);
    else
      x += f.breakpoints[i] * p;
    previous = &p;
  }
  return (x + x.adjoint()) * Real(0.5);
}

template <typename Real>
Projection<Real> evaluate(const SpectralFamily<Real>& f, Real lambda) {
  const auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), lambda);
  if (it == f.breakpoints.begin()) return Projection<Real>::zero(f.dim);
  return f.cumulative[static_cast<std::size_t>(it - f.breakpoints.begin()) - 1];
}

template <typename Real>
std::vector<Real> merged_breakpoints(std::span<const SpectralFamily<Real>> fs) {
  std::vector<Real> out;
  for (const auto& f : fs) out.insert(out.end(), f.breakpoints.begin(), f.breakpoints.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <typename Real>
SpectralFamily<Real> family_from_steps(Index dim, const std::vector<Real>& points,
                                       std::vector<Projection<Real>> projections) {
  if (points.size() != projections.size() || points.empty())
    throw std::invalid_argument("family_from_steps: mismatched samples");
  SpectralFamily<Real> f;
  f.dim = dim;
  Index rank = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (projections[i].rank() <= rank) continue;
    rank = projections[i].rank();
    f.breakpoints.push_back(points[i]);
    f.cumulative.push_back(std::move(projections[i]));
  }
  if (rank != dim) throw std::runtime_error("family_from_steps: final projection is not the identity");
  return f;
}

}  // namespace speclat
