#pragma once

#include <algorithm>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "speclat/tolerance.hpp"

namespace speclat {

using Index = Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;

/// Dense complex matrix; Hermitian elements, projections and unitaries all
/// live in this type.
template <typename Real>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Matrixd = Matrix<double>;
using Vectord = Vector<double>;
using RealVectord = RealVector<double>;

/// Largest absolute entry.
template <typename Derived>
auto max_norm(const Eigen::MatrixBase<Derived>& a) {
  using std::abs;
  typename Eigen::NumTraits<typename Derived::Scalar>::Real m(0);
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) m = std::max<decltype(m)>(m, abs(a(i, j)));
  return m;
}

template <typename Real>
Real hermitian_defect(const Matrix<Real>& a);

template <typename Real>
bool is_hermitian(const Matrix<Real>& a, const Tolerance<Real>& tol);

/// Throws std::invalid_argument naming `what` unless `a` is square and
/// Hermitian within eps_proj.
template <typename Real>
void require_hermitian(const Matrix<Real>& a, const Tolerance<Real>& tol,
                       const char* what = "matrix");

/// Spectral decomposition with eigenvalues in ascending order.
///
/// `clusters` partitions the column indices into contiguous runs whose
/// consecutive eigenvalues differ by at most eps_eig; each run becomes one
/// breakpoint of the spectral family.  Every column is phase-normalised so
/// that its first non-negligible component is real and positive.
template <typename Real>
struct EigenSystem {
  RealVector<Real> values;
  Matrix<Real> vectors;
  std::vector<std::pair<Index, Index>> clusters;  // half-open [first, last)

  Matrix<Real> reconstruct() const;
};

template <typename Real>
EigenSystem<Real> eigh(const Matrix<Real>& x, const Tolerance<Real>& tol = {});

/// Orthogonal projection, stored together with an orthonormal basis of its
/// range.  The basis makes meets, joins and images under invertible maps
/// cheap and exact.
template <typename Real>
class Projection {
 public:
  Projection() = default;

  /// Takes ownership of an orthonormal basis (n x rank).
  static Projection from_orthonormal_basis(Matrix<Real> basis);
  /// Validates `p` as a projection matrix within eps_proj.
  static Projection from_matrix(const Matrix<Real>& p, const Tolerance<Real>& tol = {});
  static Projection zero(Index n);
  static Projection identity(Index n);

  Index dim() const { return basis_.rows(); }
  Index rank() const { return basis_.cols(); }
  const Matrix<Real>& matrix() const { return matrix_; }
  const Matrix<Real>& basis() const { return basis_; }

 private:
  Matrix<Real> basis_;
  Matrix<Real> matrix_;
};

using Projectiond = Projection<double>;

/// Projection onto the span of the columns of `cols`; the rank is the
/// number of singular values above eps_proj * max(1, largest).
template <typename Real>
Projection<Real> orthonormal_range(const Matrix<Real>& cols, const Tolerance<Real>& tol = {});

/// Positive semidefiniteness: smallest eigenvalue >= -eps_proj.
template <typename Real>
bool is_psd(const Matrix<Real>& x, const Tolerance<Real>& tol = {});

/// Smallest eigenvalue of a Hermitian matrix (no clustering).
template <typename Real>
Real min_eigenvalue(const Matrix<Real>& x, const Tolerance<Real>& tol = {});

/// Projection matrix onto a single vector.
template <typename Real>
Projection<Real> rank_one(const Vector<Real>& v, const Tolerance<Real>& tol = {});

}  // namespace speclat
