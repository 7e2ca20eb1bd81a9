#include "speclat/selftest.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "speclat/projection_lattice.hpp"
#include "speclat/random.hpp"
#include "speclat/recovery.hpp"

namespace speclat {

namespace {

using random::Rng;

Index small_dim(Rng& rng, Index lo = 1) { return std::uniform_int_distribution<Index>(lo, 6)(rng); }

BlockProfile small_profile(Rng& rng) {
  std::vector<Index> dims(std::uniform_int_distribution<int>(1, 3)(rng));
  for (auto& d : dims) d = std::uniform_int_distribution<Index>(1, 3)(rng);
  return BlockProfile(std::move(dims));
}

/// Runs `body` once per instance; the body returns a residual, or throws.
Check run(const std::string& name, std::size_t trials, double limit, Rng& rng,
          const std::function<double(Rng&)>& body) {
  Check c;
  c.name = name;
  for (std::size_t t = 0; t < trials; ++t) {
    double r = 0;
    try {
      r = body(rng);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = "instance " + std::to_string(t) + ": " + e.what();
      c.instances = t + 1;
      return c;
    }
    c.residual = std::max(c.residual, r);
    c.instances = t + 1;
    if (!(r <= limit)) {
      c.pass = false;
      c.detail = "instance " + std::to_string(t) + ": residual " + std::to_string(r);
      return c;
    }
  }
  return c;
}

double mismatch(bool a, bool b) { return a == b ? 0.0 : 1.0; }

DirectSumElement central_projection(const BlockProfile& p, Rng& rng) {
  DirectSumElement z = DirectSumElement::zeros(p);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t j = 0; j < p.size(); ++j)
    if (coin(rng)) z.blocks[j].setIdentity();
  return z;
}

DirectSumElement blockwise_product(const DirectSumElement& a, const DirectSumElement& b) {
  DirectSumElement out = a;
  for (std::size_t j = 0; j < a.blocks.size(); ++j) out.blocks[j] = a.blocks[j] * b.blocks[j];
  return out;
}

}  // namespace

std::vector<Check> run_selftest(std::uint64_t seed, std::size_t trials, const Toleranced& tol) {
  tol.validate();
  Rng rng(seed);
  std::vector<Check> checks;
  const double recon = tol.eps_recon;

  checks.push_back(run("spectral family axioms", trials, recon, rng, [&](Rng& r) {
    const Index n = small_dim(r);
    const Matrixd x = random::hermitian(n, r);
    const auto f = family_of<double>(x, tol);
    const Matrixd id = Matrixd::Identity(n, n);
    double worst = max_norm(element_of(f, tol) - x);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double l = f.breakpoints[i];
      const Matrixd e = f.cumulative[i].matrix();
      worst = std::max(worst, -min_eigenvalue<double>(Matrixd(l * e - x * e), tol));
      worst = std::max(worst, -min_eigenvalue<double>(Matrixd(x * (id - e) - l * (id - e)), tol));
    }
    return worst;
  }));

  checks.push_back(run("spectral order agrees with projection order", trials, 0, rng, [&](Rng& r) {
    const Index n = small_dim(r);
    const auto p = random::projection(n, std::uniform_int_distribution<Index>(0, n)(r), r);
    auto q = random::projection(n, std::uniform_int_distribution<Index>(0, n)(r), r);
    if (std::bernoulli_distribution(0.5)(r)) q = proj_join(p, q, tol);
    return mismatch(spec_leq<double>(p.matrix(), q.matrix(), tol), proj_leq(p, q, tol));
  }));

  checks.push_back(run("spectral order implies Loewner order", trials, tol.eps_eig, rng, [&](Rng& r) {
    const Index n = small_dim(r);
    const Matrixd x = random::hermitian(n, r);
    const auto g = random::piecewise_linear(Cone::self_adjoint, r);
    const Matrixd y = apply_monotone<double>(g, x, Cone::self_adjoint, tol);
    const Matrixd lo = spec_meet<double>(x, y, Cone::self_adjoint, tol);
    if (!spec_leq<double>(lo, y, tol)) return 1.0;
    return std::max(0.0, -min_eigenvalue<double>(Matrixd(y - lo), tol));
  }));

  checks.push_back(run("lattice operations on commuting elements", trials, recon, rng, [&](Rng& r) {
    const Index n = small_dim(r);
    const Matrixd u = random::unitary(n, r);
    std::uniform_real_distribution<double> d(-2, 2);
    RealVectord a(n), b(n);
    for (Index i = 0; i < n; ++i) {
      a(i) = d(r);
      b(i) = std::bernoulli_distribution(0.3)(r) ? a(i) : d(r);
    }
    const Matrixd x = random::with_spectrum(a, u), y = random::with_spectrum(b, u);
    const Matrixd lo = random::with_spectrum(a.cwiseMin(b), u), hi = random::with_spectrum(a.cwiseMax(b), u);
    return std::max(max_norm(spec_meet<double>(x, y, Cone::self_adjoint, tol) - lo),
                    max_norm(spec_join<double>(x, y, Cone::self_adjoint, tol) - hi));
  }));

  checks.push_back(run("infimum with a central projection", trials, recon, rng, [&](Rng& r) {
    const BlockProfile p = small_profile(r);
    const DirectSumElement z = central_projection(p, r);
    const DirectSumElement x = random::element(p, Cone::effect, r);
    const std::vector<DirectSumElement> pair{z, x};
    return max_distance(ds_meet(pair, Cone::effect, tol), blockwise_product(z, x));
  }));

  checks.push_back(run("supremum and multiplication", trials, recon, rng, [&](Rng& r) {
    const BlockProfile p = small_profile(r);
    const DirectSumElement x = random::element(p, Cone::positive, r);
    const auto atoms = central_atoms(p);
    std::vector<DirectSumElement> parts;
    DirectSumElement sum = DirectSumElement::zeros(p);
    for (const auto& z : atoms) {
      if (!std::bernoulli_distribution(0.6)(r)) continue;
      parts.push_back(blockwise_product(z, x));
      sum += z;
    }
    if (parts.empty()) return 0.0;
    return max_distance(ds_join(parts, Cone::positive, tol), blockwise_product(sum, x));
  }));

  checks.push_back(run("spectral family of a direct sum", trials, recon, rng, [&](Rng& r) {
    const BlockProfile p = small_profile(r);
    const DirectSumElement x = random::element(p, Cone::self_adjoint, r);
    const auto whole = family_of<double>(x.assemble(), tol);
    const auto parts = ds_family(x, tol);
    double worst = 0;
    for (double b : whole.breakpoints) {
      // both sides are computed from different eigensolves; step just right of b
      const double l = b + 0.5 * tol.eps_eig;
      DirectSumElement e = DirectSumElement::zeros(p);
      for (std::size_t j = 0; j < p.size(); ++j) e.blocks[j] = evaluate(parts[j], l).matrix();
      worst = std::max(worst, max_norm(e.assemble() - evaluate(whole, l).matrix()));
    }
    return worst;
  }));

  checks.push_back(run("spectral order on a direct sum", trials, 0, rng, [&](Rng& r) {
    const BlockProfile p = small_profile(r);
    const DirectSumElement x = random::element(p, Cone::self_adjoint, r);
    DirectSumElement y = random::element(p, Cone::self_adjoint, r);
    if (std::bernoulli_distribution(0.5)(r)) {
      const std::vector<DirectSumElement> pair{x, y};
      y = ds_join(pair, Cone::self_adjoint, tol);
    }
    return mismatch(ds_spec_leq(x, y, tol), spec_leq<double>(x.assemble(), y.assemble(), tol));
  }));

  checks.push_back(run("positive and negative parts", trials, recon, rng, [&](Rng& r) {
    const BlockProfile p = small_profile(r);
    const DirectSumIso phi = random::direct_sum_iso(p, Cone::self_adjoint, r);
    const DirectSumElement x = random::element(p, Cone::self_adjoint, r);
    const auto parts = ds_pos_neg_parts(x, tol);
    const auto image = ds_pos_neg_parts(ds_iso_apply(phi, x, tol), tol);
    return std::max(max_distance(image.positive, ds_iso_apply(phi, parts.positive, tol)),
                    max_distance(image.negative, -ds_iso_apply(phi, -parts.negative, tol)));
  }));

  checks.push_back(run("central elements are distributive", trials, recon, rng, [&](Rng& r) {
    const BlockProfile p = small_profile(r);
    DirectSumElement z = DirectSumElement::zeros(p);
    std::uniform_real_distribution<double> d(-2, 2);
    for (auto& b : z.blocks) b = d(r) * Matrixd::Identity(b.rows(), b.cols());
    const Matrixd x = random::element(p, Cone::self_adjoint, r).assemble();
    const Matrixd y = random::element(p, Cone::self_adjoint, r).assemble();
    return distributive_residual<double>(z.assemble(), x, y, Cone::self_adjoint, tol);
  }));

  checks.push_back(run("decomposition round trip", trials, 1e-6, rng, [&](Rng& r) {
    const BlockProfile p = small_profile(r);
    const Cone cone = std::array{Cone::effect, Cone::positive, Cone::self_adjoint}[r() % 3];
    random::IsoOptions options;
    options.shift = cone == Cone::self_adjoint;
    options.jordan = std::bernoulli_distribution(0.3)(r);
    const DirectSumIso phi = random::direct_sum_iso(p, cone, r, options);
    RecoveryOptions ro;
    ro.verify_samples = 10;
    ro.seed = r();
    const Decomposition d = decompose_iso(make_oracle(phi, tol), tol, ro);
    if (d.pi != phi.pi) return 1.0;
    return d.verification_residual;
  }));

  checks.push_back(run("orthoisomorphism discrimination", std::max<std::size_t>(1, trials / 5), 0, rng,
                       [&](Rng& r) {
    BlockProfile p({std::uniform_int_distribution<Index>(2, 3)(r), std::uniform_int_distribution<Index>(2, 3)(r)});
    random::IsoOptions jordan;
    jordan.jordan = true;
    const auto good = is_orthoiso(make_oracle(random::direct_sum_iso(p, Cone::effect, r, jordan), tol), 50, r(), tol);
    const auto bad = is_orthoiso(make_oracle(random::direct_sum_iso(p, Cone::effect, r), tol), 200, r(), tol);
    return mismatch(good.orthoisomorphism, true) + mismatch(bad.orthoisomorphism, false);
  }));

  return checks;
}

}  // namespace speclat
