// Explicit instantiations of the scalar-templated core for double.  Other
// scalar types can include the -impl headers directly.

#include "speclat/numeric-impl.hpp"
#include "speclat/projection_lattice-impl.hpp"
#include "speclat/spectral_family-impl.hpp"
#include "speclat/spectral_order-impl.hpp"

namespace speclat {

#define SPECLAT_INSTANTIATE(Real)                                                                  \
  template Real hermitian_defect<Real>(const Matrix<Real>&);                                       \
  template bool is_hermitian<Real>(const Matrix<Real>&, const Tolerance<Real>&);                   \
  template void require_hermitian<Real>(const Matrix<Real>&, const Tolerance<Real>&, const char*); \
  template struct EigenSystem<Real>;                                                               \
  template EigenSystem<Real> eigh<Real>(const Matrix<Real>&, const Tolerance<Real>&);              \
  template class Projection<Real>;                                                                 \
  template Projection<Real> orthonormal_range<Real>(const Matrix<Real>&, const Tolerance<Real>&);  \
  template bool is_psd<Real>(const Matrix<Real>&, const Tolerance<Real>&);                         \
  template Real min_eigenvalue<Real>(const Matrix<Real>&, const Tolerance<Real>&);                 \
  template Projection<Real> rank_one<Real>(const Vector<Real>&, const Tolerance<Real>&);           \
  template bool proj_leq<Real>(const Projection<Real>&, const Projection<Real>&,                   \
                               const Tolerance<Real>&);                                            \
  template Projection<Real> proj_meet<Real>(std::span<const Projection<Real>>,                     \
                                            const Tolerance<Real>&);                               \
  template Projection<Real> proj_join<Real>(std::span<const Projection<Real>>,                     \
                                            const Tolerance<Real>&);                               \
  template Projection<Real> proj_complement<Real>(const Projection<Real>&);                        \
  template void validate<Real>(const SpectralFamily<Real>&, const Tolerance<Real>&);               \
  template SpectralFamily<Real> family_of<Real>(const Matrix<Real>&, const Tolerance<Real>&);      \
  template Matrix<Real> element_of<Real>(const SpectralFamily<Real>&, const Tolerance<Real>&);     \
  template Projection<Real> evaluate<Real>(const SpectralFamily<Real>&, Real);                     \
  template std::vector<Real> merged_breakpoints<Real>(std::span<const SpectralFamily<Real>>);      \
  template SpectralFamily<Real> family_from_steps<Real>(Index, const std::vector<Real>&,           \
                                                        std::vector<Projection<Real>>);            \
  template bool in_cone<Real>(const Matrix<Real>&, Cone, const Tolerance<Real>&);                  \
  template void require_cone<Real>(const Matrix<Real>&, Cone, const Tolerance<Real>&,              \
                                   const char*);                                                   \
  template bool spec_leq<Real>(const Matrix<Real>&, const Matrix<Real>&, const Tolerance<Real>&);  \
  template bool spec_leq<Real>(const SpectralFamily<Real>&, const SpectralFamily<Real>&,           \
                               const Tolerance<Real>&);                                            \
  template Matrix<Real> spec_join<Real>(std::span<const Matrix<Real>>, Cone,                       \
                                        const Tolerance<Real>&);                                   \
  template Matrix<Real> spec_meet<Real>(std::span<const Matrix<Real>>, Cone,                       \
                                        const Tolerance<Real>&);                                   \
  template PosNegParts<Real> pos_neg_parts<Real>(const Matrix<Real>&, const Tolerance<Real>&);     \
  template Matrix<Real> apply_monotone<Real>(const MonotoneBijection&, const Matrix<Real>&, Cone,  \
                                             const Tolerance<Real>&);                              \
  template std::optional<ScalarAtom<Real>> atom_scalar_decompose<Real>(const Matrix<Real>&, Cone,  \
                                                                       const Tolerance<Real>&);    \
  template bool is_central<Real>(const Matrix<Real>&, const BlockProfile&, const Tolerance<Real>&); \
  template Real distributive_residual<Real>(const Matrix<Real>&, const Matrix<Real>&,              \
                                            const Matrix<Real>&, Cone, const Tolerance<Real>&);

SPECLAT_INSTANTIATE(double)

#undef SPECLAT_INSTANTIATE

}  // namespace speclat
