#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

#include "speclat/numeric-impl.hpp"
#include "speclat/projection_lattice-impl.hpp"
#include "speclat/spectral_family-impl.hpp"
#include "speclat/spectral_order.hpp"

namespace speclat {

template <typename Real>
bool in_cone(const Matrix<Real>& x, Cone cone, const Tolerance<Real>& tol) {
  if (!is_hermitian(x, tol)) return false;
  if (cone == Cone::self_adjoint) return true;
  if (!is_psd(x, tol)) return false;
  if (cone == Cone::positive) return true;
  return is_psd<Real>(Matrix<Real>::Identity(x.rows(), x.cols()) - x, tol);
}

template <typename Real>
void require_cone(const Matrix<Real>& x, Cone cone, const Tolerance<Real>& tol, const char* what) {
  require_hermitian(x, tol, what);
  if (!in_cone(x, cone, tol))
    throw std::invalid_argument(std::string(what) + " lies outside the " +
                                std::string(to_string(cone)) + " cone");
}

template <typename Real>
bool spec_leq(const SpectralFamily<Real>& fx, const SpectralFamily<Real>& fy, const Tolerance<Real>& tol) {
  if (fx.dim != fy.dim) throw std::invalid_argument("spec_leq: dimension mismatch");
  // Check E^y_l <= E^x_{l + eps} on every interval where either side is
  // constant.
  std::vector<Real> points = fy.breakpoints;
  for (Real b : fx.breakpoints) points.push_back(b - tol.eps_eig);
  std::sort(points.begin(), points.end());
  for (Real l : points)
    if (!proj_leq(evaluate(fy, l), evaluate(fx, l + tol.eps_eig), tol)) return false;
  return true;
}

template <typename Real>
bool spec_leq(const Matrix<Real>& x, const Matrix<Real>& y, const Tolerance<Real>& tol) {
  if (x.rows() != y.rows()) throw std::invalid_argument("spec_leq: dimension mismatch");
  return spec_leq(family_of(x, tol), family_of(y, tol), tol);
}

namespace detail {

template <typename Real>
std::vector<SpectralFamily<Real>> families_in_cone(std::span<const Matrix<Real>> xs, Cone cone,
                                                   const Tolerance<Real>& tol) {
  if (xs.empty()) throw std::invalid_argument("lattice operation on an empty family");
  std::vector<SpectralFamily<Real>> fs;
  fs.reserve(xs.size());
  for (const auto& x : xs) {
    if (x.rows() != xs.front().rows()) throw std::invalid_argument("dimension mismatch");
    require_cone(x, cone, tol, "lattice operand");
    fs.push_back(family_of(x, tol));
  }
  return fs;
}

}  // namespace detail

template <typename Real>
Matrix<Real> spec_join(std::span<const Matrix<Real>> xs, Cone cone, const Tolerance<Real>& tol) {
  const auto fs = detail::families_in_cone(xs, cone, tol);
  const Index n = xs.front().rows();
  const std::vector<Real> points = merged_breakpoints<Real>(fs);
  std::vector<Projection<Real>> steps;
  std::vector<Projection<Real>> at(fs.size());
  for (Real l : points) {
    for (std::size_t i = 0; i < fs.size(); ++i) at[i] = evaluate(fs[i], l);
    steps.push_back(proj_meet<Real>(at, tol));
  }
  return element_of(family_from_steps(n, points, std::move(steps)), tol);
}

template <typename Real>
Matrix<Real> spec_meet(std::span<const Matrix<Real>> xs, Cone cone, const Tolerance<Real>& tol) {
  const auto fs = detail::families_in_cone(xs, cone, tol);
  const Index n = xs.front().rows();
  const std::vector<Real> points = merged_breakpoints<Real>(fs);
  std::vector<Projection<Real>> steps;
  std::vector<Projection<Real>> at(fs.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    // Every family is constant on (points[k], points[k+1]), so the right
    // limit is the value at the midpoint.
    const Real probe = k + 1 < points.size() ? (points[k] + points[k + 1]) / 2 : points[k] + 1;
    for (std::size_t i = 0; i < fs.size(); ++i) at[i] = evaluate(fs[i], probe);
    steps.push_back(proj_join<Real>(at, tol));
  }
  return element_of(family_from_steps(n, points, std::move(steps)), tol);
}

template <typename Real>
PosNegParts<Real> pos_neg_parts(const Matrix<Real>& x, const Tolerance<Real>& tol) {
  const EigenSystem<Real> es = eigh(x, tol);
  const RealVector<Real> plus = es.values.cwiseMax(Real(0));
  const RealVector<Real> minus = (-es.values).cwiseMax(Real(0));
  const Matrix<Real>& v = es.vectors;
  return {v * plus.template cast<Complex<Real>>().asDiagonal() * v.adjoint(),
          v * minus.template cast<Complex<Real>>().asDiagonal() * v.adjoint()};
}

template <typename Real>
Matrix<Real> apply_monotone(const MonotoneBijection& f, const Matrix<Real>& x, Cone cone,
                            const Tolerance<Real>& tol) {
  if (!f.preserves(cone))
    throw std::invalid_argument("monotone bijection does not preserve the " +
                                std::string(to_string(cone)) + " cone");
  require_cone(x, cone, tol, "apply_monotone input");
  SpectralFamily<Real> fam = family_of(x, tol);
  for (Real& b : fam.breakpoints) b = static_cast<Real>(f(static_cast<double>(b)));
  return element_of(fam, tol);
}

template <typename Real>
std::optional<ScalarAtom<Real>> atom_scalar_decompose(const Matrix<Real>& z, Cone cone,
                                                      const Tolerance<Real>& tol) {
  if (cone == Cone::self_adjoint)
    throw std::invalid_argument("atom characterisation needs the effect or positive cone");
  require_cone(z, cone, tol, "atom candidate");

  const EigenSystem<Real> es = eigh(z, tol);
  const Index n = es.values.size();
  Index nonzero = 0;
  for (Index i = 0; i < n; ++i)
    if (std::abs(es.values(i)) > tol.eps_eig) ++nonzero;
  if (nonzero != 1) return std::nullopt;
  // Ascending order puts the single positive eigenvalue last.
  const Real scale = es.values(n - 1);
  if (!(scale > 0)) return std::nullopt;
  if (cone == Cone::effect && scale > 1 + tol.eps_eig) return std::nullopt;
  ScalarAtom<Real> out{scale, Projection<Real>::from_orthonormal_basis(es.vectors.rightCols(1))};
  if (max_norm(z - scale * out.atom.matrix()) > tol.eps_recon) return std::nullopt;
  return out;
}

template <typename Real>
bool is_central(const Matrix<Real>& z, const BlockProfile& profile, const Tolerance<Real>& tol) {
  const Index n = profile.total();
  if (z.rows() != n || z.cols() != n) return false;
  if (!is_hermitian(z, tol)) return false;
  Matrix<Real> expected = Matrix<Real>::Zero(n, n);
  for (std::size_t j = 0; j < profile.size(); ++j) {
    const Index o = profile.offset(j), m = profile.dim(j);
    const Real c = z.block(o, o, m, m).diagonal().real().mean();
    expected.block(o, o, m, m).diagonal().setConstant(c);
  }
  return max_norm(z - expected) <= tol.eps_proj;
}

template <typename Real>
Real distributive_residual(const Matrix<Real>& z, const Matrix<Real>& x, const Matrix<Real>& y,
                           Cone cone, const Tolerance<Real>& tol) {
  if (z.rows() != x.rows() || x.rows() != y.rows())
    throw std::invalid_argument("distributive_check: dimension mismatch");
  const Matrix<Real> lhs = spec_join<Real>(z, spec_meet<Real>(x, y, cone, tol), cone, tol);
  const Matrix<Real> rhs =
      spec_meet<Real>(spec_join<Real>(z, x, cone, tol), spec_join<Real>(z, y, cone, tol), cone, tol);
  return max_norm(lhs - rhs);
}

}  // namespace speclat
