#include "speclat/isomorphism.hpp"

#include <stdexcept>
#include <string>

#include <Eigen/LU>

namespace speclat {

ProjectionIsomorphism::ProjectionIsomorphism(Matrixd t, bool antilinear)
    : t_(std::move(t)), antilinear_(antilinear) {
  if (t_.rows() != t_.cols() || t_.rows() == 0)
    throw std::invalid_argument("projection isomorphism needs a square nonempty matrix");
  Eigen::FullPivLU<Matrixd> lu(t_);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw std::invalid_argument("projection isomorphism matrix is singular");
}

Projectiond ProjectionIsomorphism::operator()(const Projectiond& p, const Toleranced& tol) const {
  if (p.dim() != dim()) throw std::invalid_argument("projection isomorphism: dimension mismatch");
  if (p.rank() == 0 || p.rank() == dim()) return p;
  const Matrixd image = antilinear_ ? Matrixd(t_ * p.basis().conjugate()) : Matrixd(t_ * p.basis());
  return orthonormal_range<double>(image, tol);
}

ProjectionIsomorphism ProjectionIsomorphism::inverse() const {
  const Matrixd inv = t_.inverse();
  // tau(p) = T conj(range p) is undone by v -> conj(T^{-1} v).
  return ProjectionIsomorphism(antilinear_ ? Matrixd(inv.conjugate()) : inv, antilinear_);
}

namespace {

SpectralFamilyd transport(SpectralFamilyd fam, const ProjectionIsomorphism& tau, const Toleranced& tol) {
  if (fam.dim != tau.dim()) throw std::invalid_argument("Theta_tau: dimension mismatch");
  for (auto& p : fam.cumulative) p = tau(p, tol);
  return fam;
}

}  // namespace

Matrixd theta_apply(const ProjectionIsomorphism& tau, const Matrixd& x, const Toleranced& tol) {
  return element_of<double>(transport(family_of<double>(x, tol), tau, tol), tol);
}

JordanIso::JordanIso(Matrixd u, bool transpose, double unitary_tol) : u_(std::move(u)), transpose_(transpose) {
  if (u_.rows() != u_.cols() || u_.rows() == 0)
    throw std::invalid_argument("Jordan isomorphism needs a square nonempty matrix");
  const Index n = u_.rows();
  if (max_norm(u_.adjoint() * u_ - Matrixd::Identity(n, n)) > unitary_tol)
    throw std::invalid_argument("Jordan isomorphism matrix is not unitary");
}

Matrixd JordanIso::operator()(const Matrixd& x) const {
  if (x.rows() != dim() || x.cols() != dim()) throw std::invalid_argument("Jordan map: dimension mismatch");
  if (transpose_) return u_ * x.transpose() * u_.adjoint();
  return u_ * x * u_.adjoint();
}

JordanIso JordanIso::inverse() const {
  // (u* y u)^T = u^T y^T conj(u).
  if (transpose_) return JordanIso(u_.transpose(), true);
  return JordanIso(u_.adjoint(), false);
}

Matrixd jordan_apply(const JordanIso& psi, const Matrixd& x) { return psi(x); }

Index FactorCanonicalIso::dim() const {
  return std::visit([](const auto& l) { return l.dim(); }, lattice);
}

ProjectionIsomorphism FactorCanonicalIso::tau() const {
  if (const auto* j = std::get_if<JordanIso>(&lattice)) return j->restriction();
  return std::get<ProjectionIsomorphism>(lattice);
}

FactorCanonicalIso FactorCanonicalIso::inverse() const {
  // Theta_tau and f act on projections and breakpoints separately, so they
  // commute and the inverse is Theta_{tau^-1} o f^-1.
  FactorCanonicalIso out{f.inverse(), {}};
  std::visit([&](const auto& l) { out.lattice = l.inverse(); }, lattice);
  return out;
}

Matrixd canonical_apply(const FactorCanonicalIso& c, const Matrixd& x, Cone cone, const Toleranced& tol) {
  if (x.rows() != c.dim()) throw std::invalid_argument("canonical map: dimension mismatch");
  if (const auto* j = std::get_if<JordanIso>(&c.lattice))
    return (*j)(apply_monotone<double>(c.f, x, cone, tol));
  if (!c.f.preserves(cone))
    throw std::invalid_argument("scalar map does not preserve the " + std::string(to_string(cone)) + " cone");
  require_cone<double>(x, cone, tol, "canonical map input");
  SpectralFamilyd fam = family_of<double>(x, tol);
  for (double& b : fam.breakpoints) b = c.f(b);
  return element_of<double>(transport(std::move(fam), std::get<ProjectionIsomorphism>(c.lattice), tol), tol);
}

void DirectSumIso::validate() const {
  const std::size_t n = domain.size();
  if (codomain.size() != n || pi.size() != n)
    throw std::invalid_argument("pi must be a bijection between the block index sets");
  std::vector<bool> seen(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (pi[k] >= n || seen[pi[k]]) throw std::invalid_argument("pi is not a bijection");
    seen[pi[k]] = true;
    if (codomain.dim(k) != domain.dim(pi[k]))
      throw std::invalid_argument("codomain block " + std::to_string(k + 1) + " has dimension " +
                                  std::to_string(codomain.dim(k)) + " but domain block " +
                                  std::to_string(pi[k] + 1) + " has " + std::to_string(domain.dim(pi[k])));
  }
  if (blocks.size() != n) throw std::invalid_argument("one factor map per domain block is required");
  for (std::size_t j = 0; j < n; ++j) {
    if (blocks[j].dim() != domain.dim(j))
      throw std::invalid_argument("factor map " + std::to_string(j + 1) + " has the wrong dimension");
    if (!blocks[j].f.preserves(cone))
      throw std::invalid_argument("scalar map " + std::to_string(j + 1) + " does not preserve the " +
                                  std::string(to_string(cone)) + " cone");
  }
}

DirectSumIso DirectSumIso::inverse() const {
  validate();
  DirectSumIso out;
  out.domain = codomain;
  out.codomain = domain;
  out.cone = cone;
  out.pi.resize(pi.size());
  out.blocks.resize(pi.size());
  for (std::size_t k = 0; k < pi.size(); ++k) {
    out.pi[pi[k]] = k;
    out.blocks[k] = blocks[pi[k]].inverse();
  }
  return out;
}

DirectSumElement ds_iso_apply(const DirectSumIso& phi, const DirectSumElement& x, const Toleranced& tol) {
  if (x.profile != phi.domain) throw std::invalid_argument("element profile does not match the isomorphism domain");
  DirectSumElement out{phi.codomain, std::vector<Matrixd>(phi.codomain.size())};
  for (std::size_t k = 0; k < phi.pi.size(); ++k) {
    const std::size_t j = phi.pi[k];
    out.blocks[k] = canonical_apply(phi.blocks[j], x.blocks[j], phi.cone, tol);
  }
  return out;
}

}  // namespace speclat
