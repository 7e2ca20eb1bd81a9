#include "speclat/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/QR>

#include "speclat/random.hpp"

namespace speclat {

OrderIsoOracle make_oracle(const DirectSumIso& iso, const Toleranced& tol) {
  iso.validate();
  const DirectSumIso inv = iso.inverse();
  return {iso.domain, iso.codomain, iso.cone,
          [iso, tol](const DirectSumElement& x) { return ds_iso_apply(iso, x, tol); },
          [inv, tol](const DirectSumElement& y) { return ds_iso_apply(inv, y, tol); }};
}

std::size_t Decomposition::codomain_block(std::size_t j) const {
  for (std::size_t k = 0; k < pi.size(); ++k)
    if (pi[k] == j) return k;
  throw std::out_of_range("domain block is not covered by pi");
}

DirectSumElement Decomposition::apply(const DirectSumElement& x) const {
  if (x.profile != domain) throw std::invalid_argument("element profile does not match the decomposition");
  DirectSumElement out = shift;
  for (std::size_t k = 0; k < pi.size(); ++k) out.blocks[k] += factors[pi[k]](x.blocks[pi[k]]);
  return out;
}

namespace {

std::string block_name(std::size_t j) { return "z_" + std::to_string(j + 1); }

DirectSumElement query(const OrderIsoOracle& phi, const DirectSumElement& x) {
  DirectSumElement y = phi.forward(x);
  if (y.profile != phi.codomain) throw RecoveryError("oracle output does not match the codomain profile");
  return y;
}

/// Blockwise scalars of a central element; throws when it is not central.
std::vector<double> central_scalars(const DirectSumElement& y, const Toleranced& tol, const std::string& what) {
  if (!is_central(y, tol)) throw RecoveryError(what + " is not central");
  std::vector<double> s;
  for (const auto& b : y.blocks) s.push_back(b.diagonal().real().mean());
  return s;
}

/// Index and value of the single nonzero scalar, if there is exactly one.
std::optional<std::pair<std::size_t, double>> single_support(const std::vector<double>& s, const Toleranced& tol) {
  std::optional<std::pair<std::size_t, double>> out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (std::abs(s[k]) <= tol.eps_recon) continue;
    if (out) return std::nullopt;
    out = std::make_pair(k, s[k]);
  }
  return out;
}

void assign_block(std::vector<std::optional<std::size_t>>& pi, std::size_t k, std::size_t j,
                  const OrderIsoOracle& phi) {
  if (pi[k]) throw RecoveryError("two central atoms map onto the same codomain block " + std::to_string(k + 1));
  if (phi.domain.dim(j) != phi.codomain.dim(k))
    throw RecoveryError("dimension mismatch: domain block " + std::to_string(j + 1) + " has dimension " +
                        std::to_string(phi.domain.dim(j)) + " but codomain block " + std::to_string(k + 1) +
                        " has " + std::to_string(phi.codomain.dim(k)));
  pi[k] = j;
}

Decomposition assemble(const OrderIsoOracle& phi, const std::vector<std::optional<std::size_t>>& partial,
                       DirectSumElement shift) {
  Decomposition d;
  d.cone = phi.cone;
  d.domain = phi.domain;
  d.codomain = phi.codomain;
  for (const auto& p : partial) {
    if (!p) throw RecoveryError("central atoms do not cover every codomain block");
    d.pi.push_back(*p);
  }
  d.shift = std::move(shift);
  d.factors.resize(d.pi.size());
  for (std::size_t j = 0; j < d.pi.size(); ++j) {
    const std::size_t k = d.codomain_block(j);
    d.factors[j] = [phi, j, k, c = d.shift](const Matrixd& x) {
      return Matrixd(query(phi, embed(phi.domain, j, x)).blocks[k] - c.blocks[k]);
    };
  }
  return d;
}

void verify(Decomposition& d, const OrderIsoOracle& phi, const RecoveryOptions& options) {
  random::Rng rng(options.seed);
  double worst = 0;
  for (std::size_t s = 0; s < options.verify_samples; ++s) {
    const DirectSumElement x = random::element(phi.domain, phi.cone, rng);
    worst = std::max(worst, max_distance(query(phi, x), d.apply(x)));
  }
  d.verification_residual = worst;
  d.verified_samples = options.verify_samples;
  if (!(worst <= options.verify_tol))
    throw RecoveryError("reassembled blocks differ from the oracle by " + std::to_string(worst));
}

void require_profiles(const OrderIsoOracle& phi, Cone cone) {
  if (phi.cone != cone)
    throw std::invalid_argument("oracle acts on the " + std::string(to_string(phi.cone)) + " cone, expected " +
                                std::string(to_string(cone)));
  if (phi.domain.size() != phi.codomain.size())
    throw RecoveryError("domain and codomain have different numbers of factors");
}

}  // namespace

Decomposition decompose_effect_iso(const OrderIsoOracle& phi, const Toleranced& tol, const RecoveryOptions& options) {
  require_profiles(phi, Cone::effect);
  const auto z = central_atoms(phi.domain);
  const auto w = central_atoms(phi.codomain);
  std::vector<std::optional<std::size_t>> pi(w.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const DirectSumElement image = query(phi, z[j]);
    std::optional<std::size_t> match;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (max_distance(image, w[k]) > 10 * tol.eps_recon) continue;
      if (match) throw RecoveryError("Phi(" + block_name(j) + ") matches several codomain central atoms");
      match = k;
    }
    if (!match) throw RecoveryError("Phi(" + block_name(j) + ") is not a codomain central atom");
    assign_block(pi, *match, j, phi);
  }
  Decomposition d = assemble(phi, pi, DirectSumElement::zeros(phi.codomain));
  verify(d, phi, options);
  return d;
}

Decomposition decompose_positive_iso(const OrderIsoOracle& phi, const Toleranced& tol,
                                     const RecoveryOptions& options) {
  require_profiles(phi, Cone::positive);
  const auto z = central_atoms(phi.domain);
  std::vector<std::optional<std::size_t>> pi(phi.codomain.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    std::optional<std::size_t> block;
    for (double lambda : {0.5, 1.0, 2.0}) {
      const std::string what = "Phi(" + std::to_string(lambda) + " " + block_name(j) + ")";
      const auto s = single_support(central_scalars(query(phi, lambda * z[j]), tol, what), tol);
      if (!s || s->second <= 0) throw RecoveryError(what + " is not a positive multiple of a codomain central atom");
      if (block && *block != s->first)
        throw RecoveryError("scalar multiples of " + block_name(j) + " land in different codomain blocks");
      block = s->first;
    }
    assign_block(pi, *block, j, phi);
  }
  Decomposition d = assemble(phi, pi, DirectSumElement::zeros(phi.codomain));
  verify(d, phi, options);
  return d;
}

Decomposition decompose_sa_iso(const OrderIsoOracle& phi, const Toleranced& tol, const RecoveryOptions& options) {
  require_profiles(phi, Cone::self_adjoint);
  const DirectSumElement shift = query(phi, DirectSumElement::zeros(phi.domain));
  if (!is_central(shift, tol)) throw RecoveryError("Phi(0) is not central");
  auto normalized = [&](const DirectSumElement& x) { return query(phi, x) - shift; };

  const auto z = central_atoms(phi.domain);
  std::vector<std::optional<std::size_t>> pi(phi.codomain.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    std::optional<std::size_t> up, down;
    for (double lambda : {0.5, 1.0, 2.0}) {
      for (double sign : {1.0, -1.0}) {
        const std::string what = "Phi(" + std::to_string(sign * lambda) + " " + block_name(j) + ") - Phi(0)";
        const auto s = single_support(central_scalars(normalized(sign * lambda * z[j]), tol, what), tol);
        if (!s || s->second * sign <= 0)
          throw RecoveryError(what + " is not a " + (sign > 0 ? "positive" : "negative") +
                              " multiple of a codomain central atom");
        auto& slot = sign > 0 ? up : down;
        if (slot && *slot != s->first)
          throw RecoveryError("scalar multiples of " + block_name(j) + " land in different codomain blocks");
        slot = s->first;
      }
    }
    if (*up != *down)
      throw RecoveryError("positive and negative multiples of " + block_name(j) + " land in codomain blocks " +
                          std::to_string(*up + 1) + " and " + std::to_string(*down + 1) +
                          " (pi and sigma disagree)");
    assign_block(pi, *up, j, phi);
  }
  // z_k - z_l is neither positive nor negative, so its image cannot be.
  for (std::size_t k = 0; k < z.size(); ++k) {
    for (std::size_t l = 0; l < z.size(); ++l) {
      if (k == l) continue;
      const Matrixd image = normalized(z[k] - z[l]).assemble();
      if (is_psd<double>(image, tol) || is_psd<double>(Matrixd(-image), tol))
        throw RecoveryError("Phi(" + block_name(k) + " - " + block_name(l) + ") - Phi(0) lies in a cone");
    }
  }
  Decomposition d = assemble(phi, pi, shift);
  verify(d, phi, options);
  return d;
}

Decomposition decompose_iso(const OrderIsoOracle& phi, const Toleranced& tol, const RecoveryOptions& options) {
  switch (phi.cone) {
    case Cone::effect: return decompose_effect_iso(phi, tol, options);
    case Cone::positive: return decompose_positive_iso(phi, tol, options);
    case Cone::self_adjoint: return decompose_sa_iso(phi, tol, options);
  }
  throw std::invalid_argument("unknown cone");
}

namespace {

constexpr int kGridIntervals = 128;

double scalar_image(const FactorMap& phi, Index n, double lambda, const Toleranced& tol) {
  const Matrixd y = phi(lambda * Matrixd::Identity(n, n));
  if (!is_central<double>(y, BlockProfile::single(n), tol))
    throw RecoveryError("Phi(" + std::to_string(lambda) + " * 1) is not scalar");
  return y.diagonal().real().mean();
}

double fit_error(const MonotoneBijection& f, const ScalarSamples& s) {
  double e = 0;
  for (std::size_t i = 0; i < s.points.size(); ++i) e = std::max(e, std::abs(f(s.points[i]) - s.values[i]));
  return e;
}

/// Piecewise-linear fit through the grid.  A kink strictly inside a grid
/// cell is located by intersecting the lines of the two neighbouring cells.
MonotoneBijection fit_piecewise_linear(const ScalarSamples& grid, const ScalarSamples& mids, double lin_tol) {
  std::vector<std::pair<double, double>> knots;
  for (std::size_t i = 0; i < grid.points.size(); ++i) knots.emplace_back(grid.points[i], grid.values[i]);
  const auto& g = grid.points;
  const auto& v = grid.values;
  const std::size_t cells = mids.points.size();
  auto linear = [&](std::size_t i) {
    return std::abs(mids.values[i] - 0.5 * (v[i] + v[i + 1])) <= lin_tol;
  };
  for (std::size_t i = 0; i < cells; ++i) {
    if (linear(i)) continue;
    bool placed = false;
    if (i > 0 && i + 2 < g.size() && linear(i - 1) && linear(i + 1)) {
      const double sl = (v[i] - v[i - 1]) / (g[i] - g[i - 1]);
      const double sr = (v[i + 2] - v[i + 1]) / (g[i + 2] - g[i + 1]);
      if (std::abs(sl - sr) > 1e-12) {
        const double x = (v[i + 1] - v[i] - sr * g[i + 1] + sl * g[i]) / (sl - sr);
        if (x > g[i] && x < g[i + 1]) {
          const double y = v[i] + sl * (x - g[i]);
          const double m = mids.points[i];
          const double predicted = m < x ? v[i] + sl * (m - g[i]) : v[i + 1] + sr * (m - g[i + 1]);
          if (std::abs(predicted - mids.values[i]) <= 10 * lin_tol) {
            knots.emplace_back(x, y);
            placed = true;
          }
        }
      }
    }
    if (!placed) knots.emplace_back(mids.points[i], mids.values[i]);
  }
  std::sort(knots.begin(), knots.end());
  std::vector<double> xs, ys;
  for (const auto& [x, y] : knots) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return MonotoneBijection::piecewise_linear(std::move(xs), std::move(ys));
}

std::optional<MonotoneBijection> fit_power(const FactorMap& phi, Index n, Cone cone, const ScalarSamples& all,
                                           double fit_tol, const Toleranced& tol) {
  if (std::abs(scalar_image(phi, n, 0.0, tol)) > fit_tol) return std::nullopt;
  const double probe = cone == Cone::effect ? 0.5 : 2.0;
  const double at_one = scalar_image(phi, n, 1.0, tol);
  const double at_probe = scalar_image(phi, n, probe, tol);
  if (!(at_one > 0) || !(at_probe > 0)) return std::nullopt;
  const double exponent = std::log(at_probe / at_one) / std::log(probe);
  if (!(exponent > 0) || !std::isfinite(exponent)) return std::nullopt;
  MonotoneBijection f = MonotoneBijection::power(exponent, at_one);
  if (fit_error(f, all) > fit_tol) return std::nullopt;
  return f;
}

ProjectionIsomorphism recover_tau(const FactorMap& phi, Index n, double level, const Toleranced& tol) {
  if (n == 1) return ProjectionIsomorphism::identity(1);
  auto tau = [&](const Vectord& v) {
    const Projectiond q = rank_one<double>(v, tol);
    const Matrixd x = Matrixd::Identity(n, n) - q.matrix();
    const Projectiond image = evaluate(family_of<double>(phi(x), tol), level);
    if (image.rank() != 1) throw RecoveryError("image of an atomic projection is not atomic");
    return Vectord(image.basis().col(0));
  };
  auto unit = [&](Index i) { return Vectord(Vectord::Unit(n, i)); };

  Matrixd t(n, n);
  t.col(0) = tau(unit(0));
  for (Index i = 1; i < n; ++i) {
    const Vectord ti = tau(unit(i));
    const Vectord r = tau(unit(0) + unit(i));
    Matrixd pair(n, 2);
    pair << t.col(0), ti;
    const Eigen::Vector2cd c = pair.colPivHouseholderQr().solve(r);
    if (std::abs(c(0)) < 1e-12) throw RecoveryError("projection map is not induced by an invertible matrix");
    t.col(i) = (c(1) / c(0)) * ti;
  }

  // e_1 + i e_2 separates linear from conjugate-linear maps.
  const Vectord probe = unit(0) + Complex<double>(0, 1) * unit(1);
  const Vectord observed = tau(probe);
  auto distance = [&](const Vectord& predicted) {
    const Vectord u = predicted.normalized();
    return (u - observed * (observed.adjoint() * u)(0)).norm();
  };
  const bool antilinear = distance(t * probe.conjugate()) < distance(t * probe);
  return ProjectionIsomorphism(t, antilinear);
}

}  // namespace

RecoveredCanonical recover_factor_canonical(const FactorMap& phi, Index n, Cone cone, const Toleranced& tol,
                                            const RecoveryOptions& options) {
  if (n <= 0) throw std::invalid_argument("factor dimension must be positive");
  const auto [lo, hi] = random::scalar_window(cone);
  const double h = (hi - lo) / kGridIntervals;

  RecoveredCanonical out;
  ScalarSamples mids;
  for (int i = 0; i <= kGridIntervals; ++i) {
    const double t = lo + i * h;
    out.grid.points.push_back(t);
    out.grid.values.push_back(scalar_image(phi, n, t, tol));
    if (i > 0 && !(out.grid.values[i] > out.grid.values[i - 1]))
      throw RecoveryError("scalar action is not strictly increasing");
    if (i < kGridIntervals) {
      mids.points.push_back(t + h / 2);
      mids.values.push_back(scalar_image(phi, n, t + h / 2, tol));
    }
  }
  double magnitude = 1;
  for (double v : out.grid.values) magnitude = std::max(magnitude, std::abs(v));
  const double fit_tol = 1e-9 * magnitude;

  ScalarSamples all = out.grid;
  all.points.insert(all.points.end(), mids.points.begin(), mids.points.end());
  all.values.insert(all.values.end(), mids.values.begin(), mids.values.end());
  if (auto power = fit_power(phi, n, cone, all, fit_tol, tol)) {
    out.iso.f = *power;
    out.fit = "power";
  } else {
    out.iso.f = fit_piecewise_linear(out.grid, mids, fit_tol);
    out.fit = "pl";
  }

  const double level = 0.5 * (scalar_image(phi, n, 0.0, tol) + scalar_image(phi, n, 1.0, tol));
  out.iso.lattice = recover_tau(phi, n, level, tol);

  random::Rng rng(options.seed);
  for (std::size_t s = 0; s < options.verify_samples; ++s) {
    const Matrixd x = random::in_cone(n, cone, rng);
    out.residual = std::max(out.residual, max_norm(canonical_apply(out.iso, x, cone, tol) - phi(x)));
  }
  if (!(out.residual <= tol.eps_recon))
    throw RecoveryError("canonical form differs from the oracle by " + std::to_string(out.residual));
  return out;
}

namespace {

double product_norm(const DirectSumElement& a, const DirectSumElement& b) {
  double m = 0;
  for (std::size_t j = 0; j < a.blocks.size(); ++j) m = std::max(m, max_norm(a.blocks[j] * b.blocks[j]));
  return m;
}

double nonzero_scalar(Cone cone, random::Rng& rng) {
  const auto [lo, hi] = random::scalar_window(cone);
  std::uniform_real_distribution<double> u(0.2, hi);
  const double a = u(rng);
  if (lo < 0 && std::bernoulli_distribution(0.5)(rng)) return -a;
  return a;
}

/// Elements with orthogonal supports in every block; half of the time each
/// block carries a single pair of orthogonal rank-one pieces.
std::pair<DirectSumElement, DirectSumElement> orthogonal_pair(const BlockProfile& profile, Cone cone,
                                                              random::Rng& rng) {
  DirectSumElement x = DirectSumElement::zeros(profile), y = x;
  const bool rank_one_only = std::bernoulli_distribution(0.5)(rng);
  for (std::size_t j = 0; j < profile.size(); ++j) {
    const Index m = profile.dim(j);
    const Matrixd u = random::unitary(m, rng);
    if (m == 1) {
      (std::bernoulli_distribution(0.5)(rng) ? x : y).blocks[j] = nonzero_scalar(cone, rng) * Matrixd::Identity(1, 1);
      continue;
    }
    const Index split = rank_one_only ? 1 : std::uniform_int_distribution<Index>(1, m - 1)(rng);
    const Index y_end = rank_one_only ? 2 : m;
    for (Index c = 0; c < y_end; ++c) {
      const Matrixd piece = nonzero_scalar(cone, rng) * u.col(c) * u.col(c).adjoint();
      (c < split ? x : y).blocks[j] += piece;
    }
  }
  return {x, y};
}

}  // namespace

OrthoReport is_orthoiso(const OrderIsoOracle& phi, std::size_t trials, std::uint64_t seed, const Toleranced& tol) {
  random::Rng rng(seed);
  const double zero_tol = 100 * tol.eps_recon;
  OrthoReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    report.trials = t + 1;
    OrthoWitness w;
    if (t % 2 == 0) {
      auto [x, y] = orthogonal_pair(phi.domain, phi.cone, rng);
      w.x = std::move(x);
      w.y = std::move(y);
      w.input_orthogonal = true;
    } else {
      do {
        w.x = random::element(phi.domain, phi.cone, rng);
        w.y = random::element(phi.domain, phi.cone, rng);
      } while (product_norm(w.x, w.y) < 1e-3);
    }
    w.input_product = product_norm(w.x, w.y);
    w.image_product = product_norm(query(phi, w.x), query(phi, w.y));
    const bool image_orthogonal = w.image_product <= zero_tol;
    if (image_orthogonal != w.input_orthogonal) {
      report.orthoisomorphism = false;
      report.witness = std::move(w);
      return report;
    }
  }
  return report;
}

}  // namespace speclat
