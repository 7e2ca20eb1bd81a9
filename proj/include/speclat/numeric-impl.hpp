#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "speclat/numeric.hpp"

namespace speclat {

template <typename Real>
Real hermitian_defect(const Matrix<Real>& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<Real>::infinity();
  return max_norm(a - a.adjoint());
}

template <typename Real>
bool is_hermitian(const Matrix<Real>& a, const Tolerance<Real>& tol) {
  return a.rows() == a.cols() && hermitian_defect(a) <= tol.eps_proj;
}

template <typename Real>
void require_hermitian(const Matrix<Real>& a, const Tolerance<Real>& tol, const char* what) {
  if (a.rows() != a.cols())
    throw std::invalid_argument(std::string(what) + " is not square");
  if (a.rows() == 0) throw std::invalid_argument(std::string(what) + " has dimension 0");
  const Real defect = hermitian_defect(a);
  if (!(defect <= tol.eps_proj))
    throw std::invalid_argument(std::string(what) + " is not Hermitian (defect " +
                                std::to_string(static_cast<double>(defect)) + ")");
}

namespace detail {

template <typename Real>
void normalize_phase(Eigen::Ref<Matrix<Real>> v) {
  using std::abs;
  for (Index j = 0; j < v.cols(); ++j) {
    Real largest = 0;
    for (Index i = 0; i < v.rows(); ++i) largest = std::max(largest, abs(v(i, j)));
    const Real cut = largest * Real(1e-6);
    for (Index i = 0; i < v.rows(); ++i) {
      if (abs(v(i, j)) > cut) {
        const Complex<Real> phase = v(i, j) / abs(v(i, j));
        v.col(j) *= std::conj(phase);
        v(i, j) = Complex<Real>(v(i, j).real(), 0);
        break;
      }
    }
  }
}

}  // namespace detail

template <typename Real>
Matrix<Real> EigenSystem<Real>::reconstruct() const {
  return vectors * values.template cast<Complex<Real>>().asDiagonal() * vectors.adjoint();
}

template <typename Real>
EigenSystem<Real> eigh(const Matrix<Real>& x, const Tolerance<Real>& tol) {
  require_hermitian(x, tol, "eigh input");
  const Matrix<Real> sym = (x + x.adjoint()) * Real(0.5);
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigensolver failed to converge");

  EigenSystem<Real> out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  detail::normalize_phase<Real>(out.vectors);

  const Index n = out.values.size();
  Index start = 0;
  for (Index i = 1; i <= n; ++i) {
    if (i == n || out.values(i) - out.values(i - 1) > tol.eps_eig) {
      out.clusters.emplace_back(start, i);
      start = i;
    }
  }
  return out;
}

template <typename Real>
Projection<Real> Projection<Real>::from_orthonormal_basis(Matrix<Real> basis) {
  Projection p;
  p.matrix_ = basis * basis.adjoint();
  p.basis_ = std::move(basis);
  return p;
}

template <typename Real>
Projection<Real> Projection<Real>::from_matrix(const Matrix<Real>& p, const Tolerance<Real>& tol) {
  require_hermitian(p, tol, "projection");
  if (max_norm(p * p - p) > tol.eps_proj)
    throw std::invalid_argument("matrix is not idempotent");
  const Real trace = p.trace().real();
  const Real rounded = std::round(trace);
  if (std::abs(trace - rounded) > Real(0.1))
    throw std::invalid_argument("projection trace is not close to an integer");

  Eigen::SelfAdjointEigenSolver<Matrix<Real>> solver((p + p.adjoint()) * Real(0.5));
  const auto rank = static_cast<Index>(rounded);
  Matrix<Real> basis = solver.eigenvectors().rightCols(rank);
  detail::normalize_phase<Real>(basis);
  return from_orthonormal_basis(std::move(basis));
}

template <typename Real>
Projection<Real> Projection<Real>::zero(Index n) {
  return from_orthonormal_basis(Matrix<Real>(n, 0));
}

template <typename Real>
Projection<Real> Projection<Real>::identity(Index n) {
  return from_orthonormal_basis(Matrix<Real>::Identity(n, n));
}

template <typename Real>
Projection<Real> orthonormal_range(const Matrix<Real>& cols, const Tolerance<Real>& tol) {
  const Index n = cols.rows();
  if (n == 0) throw std::invalid_argument("orthonormal_range: empty dimension");
  if (cols.cols() == 0) return Projection<Real>::zero(n);

  Eigen::JacobiSVD<Matrix<Real>> svd(cols, Eigen::ComputeThinU);
  const auto& sigma = svd.singularValues();
  const Real cut = tol.eps_proj * std::max(Real(1), sigma(0));
  Index rank = 0;
  while (rank < sigma.size() && sigma(rank) > cut) ++rank;
  Matrix<Real> basis = svd.matrixU().leftCols(rank);
  return Projection<Real>::from_orthonormal_basis(std::move(basis));
}

template <typename Real>
Real min_eigenvalue(const Matrix<Real>& x, const Tolerance<Real>& tol) {
  require_hermitian(x, tol, "matrix");
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> solver((x + x.adjoint()) * Real(0.5),
                                                     Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("Hermitian eigensolver failed to converge");
  return solver.eigenvalues()(0);
}

template <typename Real>
bool is_psd(const Matrix<Real>& x, const Tolerance<Real>& tol) {
  return min_eigenvalue(x, tol) >= -tol.eps_proj;
}

template <typename Real>
Projection<Real> rank_one(const Vector<Real>& v, const Tolerance<Real>& tol) {
  return orthonormal_range<Real>(Matrix<Real>(v), tol);
}

}  // namespace speclat
