#pragma once

#include <variant>
#include <vector>

#include "speclat/direct_sum.hpp"
#include "speclat/monotone.hpp"

namespace speclat {

/// Order isomorphism of P(C^n) induced by an invertible (anti)linear map:
/// tau(p) is the projection onto T range(p), with coordinates conjugated
/// first when `antilinear` is set.
class ProjectionIsomorphism {
 public:
  ProjectionIsomorphism() = default;
  /// Throws std::invalid_argument when T is not square and invertible.
  explicit ProjectionIsomorphism(Matrixd t, bool antilinear = false);

  static ProjectionIsomorphism identity(Index n) { return ProjectionIsomorphism(Matrixd::Identity(n, n)); }

  Index dim() const { return t_.rows(); }
  const Matrixd& matrix() const { return t_; }
  bool antilinear() const { return antilinear_; }

  Projectiond operator()(const Projectiond& p, const Toleranced& tol = {}) const;
  ProjectionIsomorphism inverse() const;

 private:
  Matrixd t_;
  bool antilinear_ = false;
};

/// Theta_tau(x): the element whose spectral family is tau applied to the
/// spectral family of x.
Matrixd theta_apply(const ProjectionIsomorphism& tau, const Matrixd& x, const Toleranced& tol = {});

/// Jordan *-isomorphism of a matrix factor: x -> u x u* or x -> u x^T u*.
class JordanIso {
 public:
  JordanIso() = default;
  /// Throws std::invalid_argument unless u is unitary within `unitary_tol`.
  explicit JordanIso(Matrixd u, bool transpose = false, double unitary_tol = 1e-9);

  static JordanIso identity(Index n) { return JordanIso(Matrixd::Identity(n, n)); }

  Index dim() const { return u_.rows(); }
  const Matrixd& unitary() const { return u_; }
  bool transpose() const { return transpose_; }

  Matrixd operator()(const Matrixd& x) const;
  JordanIso inverse() const;
  /// The projection isomorphism obtained by restricting to projections.
  ProjectionIsomorphism restriction() const { return ProjectionIsomorphism(u_, transpose_); }

 private:
  Matrixd u_;
  bool transpose_ = false;
};

Matrixd jordan_apply(const JordanIso& psi, const Matrixd& x);

/// Canonical spectral order isomorphism of one factor: x -> Theta_tau(f(x)),
/// or x -> psi(f(x)) when the lattice part is a Jordan map.
struct FactorCanonicalIso {
  MonotoneBijection f;
  std::variant<ProjectionIsomorphism, JordanIso> lattice;

  Index dim() const;
  bool is_jordan() const { return std::holds_alternative<JordanIso>(lattice); }
  ProjectionIsomorphism tau() const;
  FactorCanonicalIso inverse() const;
};

Matrixd canonical_apply(const FactorCanonicalIso& c, const Matrixd& x, Cone cone = Cone::self_adjoint,
                        const Toleranced& tol = {});

/// Phi((x_j)) = (phi_{pi(k)}(x_{pi(k)}))_k with each phi_j canonical.
///
/// `pi[k]` is the domain block feeding codomain block k; `blocks[j]` is the
/// factor map of domain block j.
struct DirectSumIso {
  BlockProfile domain;
  BlockProfile codomain;
  Cone cone = Cone::self_adjoint;
  std::vector<std::size_t> pi;
  std::vector<FactorCanonicalIso> blocks;

  /// Throws std::invalid_argument on a non-bijective pi, incompatible
  /// dimensions, or scalar maps that leave the cone.
  void validate() const;
  DirectSumIso inverse() const;
  bool has_two_dimensional_block() const {
    return domain.has_two_dimensional_block() || codomain.has_two_dimensional_block();
  }
};

DirectSumElement ds_iso_apply(const DirectSumIso& phi, const DirectSumElement& x, const Toleranced& tol = {});

}  // namespace speclat
