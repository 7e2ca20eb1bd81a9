#include "speclat/random.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/QR>

namespace speclat::random {

std::pair<double, double> scalar_window(Cone cone) {
  switch (cone) {
    case Cone::effect: return {0.0, 1.0};
    case Cone::positive: return {0.0, 2.0};
    case Cone::self_adjoint: return {-2.0, 2.0};
  }
  return {0.0, 1.0};
}

Matrixd gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrixd m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex<double>(g(rng), g(rng)) * std::sqrt(0.5);
  return m;
}

Matrixd hermitian(Index n, Rng& rng) {
  const Matrixd g = gaussian(n, n, rng);
  return (g + g.adjoint()) * 0.5;
}

Matrixd unitary(Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrixd> qr(gaussian(n, n, rng));
  Matrixd q = qr.householderQ() * Matrixd::Identity(n, n);
  const Matrixd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Matrixd with_spectrum(const RealVectord& eigenvalues, const Matrixd& basis) {
  Matrixd x = basis * eigenvalues.cast<Complex<double>>().asDiagonal() * basis.adjoint();
  return (x + x.adjoint()) * 0.5;
}

Matrixd in_cone(Index n, Cone cone, Rng& rng) {
  const auto [lo, hi] = scalar_window(cone);
  std::uniform_real_distribution<double> u(lo, hi);
  RealVectord ev(n);
  for (Index i = 0; i < n; ++i) ev(i) = u(rng);
  return with_spectrum(ev, unitary(n, rng));
}

Projectiond projection(Index n, Index rank, Rng& rng) {
  return Projectiond::from_orthonormal_basis(unitary(n, rng).leftCols(rank));
}

Matrixd shear(Index n, Rng& rng) {
  std::uniform_real_distribution<double> mag(0.4, 1.2), phase(0.0, 6.283185307179586);
  Matrixd t = Matrixd::Identity(n, n);
  for (Index j = 1; j < n; ++j)
    for (Index i = 0; i < j; ++i) t(i, j) = std::polar(mag(rng), phase(rng));
  return t;
}

MonotoneBijection piecewise_linear(Cone cone, Rng& rng, double offset) {
  const auto [lo, hi] = scalar_window(cone);
  const double margin = 0.1 * (hi - lo);
  std::uniform_int_distribution<int> count(1, 3);
  std::uniform_real_distribution<double> pos(lo + margin, hi - margin), slope(0.3, 3.0);
  const int k = count(rng);
  std::vector<double> interior;
  do {
    interior.clear();
    for (int i = 0; i < k; ++i) interior.push_back(pos(rng));
    std::sort(interior.begin(), interior.end());
  } while ([&] {
    for (std::size_t i = 1; i < interior.size(); ++i)
      if (interior[i] - interior[i - 1] < 0.15) return true;
    return false;
  }());

  std::vector<double> xs{lo};
  xs.insert(xs.end(), interior.begin(), interior.end());
  xs.push_back(hi);
  std::vector<double> ys{0.0};
  for (std::size_t i = 1; i < xs.size(); ++i) ys.push_back(ys.back() + slope(rng) * (xs[i] - xs[i - 1]));
  if (cone == Cone::effect) {
    for (double& y : ys) y /= ys.back();
    ys.back() = 1.0;
  } else if (cone == Cone::self_adjoint) {
    // Centre so that f(0) = offset.
    const double at_zero = MonotoneBijection::piecewise_linear(xs, ys)(0.0);
    for (double& y : ys) y += offset - at_zero;
  }
  return MonotoneBijection::piecewise_linear(std::move(xs), std::move(ys));
}

DirectSumElement element(const BlockProfile& profile, Cone cone, Rng& rng) {
  DirectSumElement x{profile, {}};
  for (auto m : profile.dims) x.blocks.push_back(in_cone(m, cone, rng));
  return x;
}

DirectSumIso direct_sum_iso(const BlockProfile& profile, Cone cone, Rng& rng, const IsoOptions& options) {
  DirectSumIso iso;
  iso.domain = profile;
  iso.codomain = profile;
  iso.cone = cone;

  // Random permutation among blocks of equal dimension.
  iso.pi.resize(profile.size());
  std::iota(iso.pi.begin(), iso.pi.end(), std::size_t{0});
  std::shuffle(iso.pi.begin(), iso.pi.end(), rng);
  std::vector<std::size_t> ordered(profile.size());
  std::iota(ordered.begin(), ordered.end(), std::size_t{0});
  for (auto m : profile.dims) {
    std::vector<std::size_t> slots, sources;
    for (std::size_t k = 0; k < profile.size(); ++k)
      if (profile.dim(k) == m) slots.push_back(k);
    for (std::size_t k : iso.pi)
      if (profile.dim(k) == m) sources.push_back(k);
    for (std::size_t i = 0; i < slots.size(); ++i) ordered[slots[i]] = sources[i];
  }
  iso.pi = ordered;

  std::uniform_real_distribution<double> shift(-1.5, 1.5);
  for (auto m : profile.dims) {
    FactorCanonicalIso c;
    c.f = piecewise_linear(cone, rng, options.shift && cone == Cone::self_adjoint ? shift(rng) : 0.0);
    if (options.jordan)
      c.lattice = JordanIso(unitary(m, rng), options.antilinear);
    else
      c.lattice = ProjectionIsomorphism(options.shear ? Matrixd(shear(m, rng) * unitary(m, rng)) : unitary(m, rng),
                                        options.antilinear);
    iso.blocks.push_back(std::move(c));
  }
  iso.validate();
  return iso;
}

}  // namespace speclat::random
