#pragma once

#include <span>
#include <vector>

#include "speclat/block_profile.hpp"
#include "speclat/cone.hpp"
#include "speclat/spectral_family.hpp"
#include "speclat/spectral_order.hpp"

namespace speclat {

/// Self-adjoint element (x_j) of a direct sum of matrix factors.
struct DirectSumElement {
  BlockProfile profile;
  std::vector<Matrixd> blocks;

  static DirectSumElement zeros(const BlockProfile& profile);
  static DirectSumElement identity(const BlockProfile& profile);
  /// Validates block shapes and Hermiticity.
  static DirectSumElement from_blocks(const BlockProfile& profile, std::vector<Matrixd> blocks,
                                      const Toleranced& tol = {});
  /// Reads the diagonal blocks of a block-diagonal matrix.
  static DirectSumElement from_block_diagonal(const BlockProfile& profile, const Matrixd& m);

  /// Block-diagonal matrix of the whole element.
  Matrixd assemble() const;
  /// sup_j ||x_j|| in operator norm.
  double norm() const;

  DirectSumElement& operator+=(const DirectSumElement& other);
  DirectSumElement& operator-=(const DirectSumElement& other);
  DirectSumElement& operator*=(double s);
};

DirectSumElement operator+(DirectSumElement a, const DirectSumElement& b);
DirectSumElement operator-(DirectSumElement a, const DirectSumElement& b);
DirectSumElement operator-(DirectSumElement a);
DirectSumElement operator*(double s, DirectSumElement a);

/// Largest entrywise difference over all blocks.
double max_distance(const DirectSumElement& a, const DirectSumElement& b);
bool elements_equal(const DirectSumElement& a, const DirectSumElement& b, const Toleranced& tol = {});

bool in_cone(const DirectSumElement& x, Cone cone, const Toleranced& tol = {});
void require_cone(const DirectSumElement& x, Cone cone, const Toleranced& tol = {},
                  const char* what = "element");

/// Blockwise spectral families; evaluating them at a common lambda gives the
/// spectral projection of the whole element.
std::vector<SpectralFamilyd> ds_family(const DirectSumElement& x, const Toleranced& tol = {});

/// Blockwise spectral order.
bool ds_spec_leq(const DirectSumElement& x, const DirectSumElement& y, const Toleranced& tol = {});

DirectSumElement ds_join(std::span<const DirectSumElement> xs, Cone cone = Cone::self_adjoint,
                         const Toleranced& tol = {});
DirectSumElement ds_meet(std::span<const DirectSumElement> xs, Cone cone = Cone::self_adjoint,
                         const Toleranced& tol = {});
struct DirectSumParts {
  DirectSumElement positive;
  DirectSumElement negative;
};
DirectSumParts ds_pos_neg_parts(const DirectSumElement& x, const Toleranced& tol = {});

/// z_j: identity in block j, zero elsewhere.
std::vector<DirectSumElement> central_atoms(const BlockProfile& profile);

/// Element with `block` in slot j and zeros elsewhere.
DirectSumElement embed(const BlockProfile& profile, std::size_t j, const Matrixd& block);

bool is_central(const DirectSumElement& z, const Toleranced& tol = {});

/// Atomic projections of a direct sum are rank-one in exactly one block.
struct DirectSumAtom {
  std::size_t block;
  double scale;
  Projectiond atom;
};
std::optional<DirectSumAtom> atom_scalar_decompose(const DirectSumElement& x, Cone cone,
                                                   const Toleranced& tol = {});

}  // namespace speclat
