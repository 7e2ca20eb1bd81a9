#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "speclat/random.hpp"
#include "speclat/recovery.hpp"

using namespace speclat;
using namespace testing;

namespace {

DirectSumIso identity_iso(const BlockProfile& p, Cone cone) {
  DirectSumIso phi{p, p, cone, {}, {}};
  for (std::size_t j = 0; j < p.size(); ++j) {
    phi.pi.push_back(j);
    phi.blocks.push_back({MonotoneBijection::identity(), ProjectionIsomorphism::identity(p.dim(j))});
  }
  return phi;
}

double max_sample_error(const Decomposition& d, const OrderIsoOracle& phi, int samples, std::uint64_t seed) {
  random::Rng rng(seed);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    const auto x = random::element(phi.domain, phi.cone, rng);
    worst = std::max(worst, max_distance(d.apply(x), phi.forward(x)));
  }
  return worst;
}

OrderIsoOracle lambda_oracle(const BlockProfile& p, Cone cone, ElementMap f) { return {p, p, cone, f, f}; }

}  // namespace

TEST_CASE("effect decomposition recovers a swap") {
  random::Rng rng(71);
  const BlockProfile p({2, 2});
  auto phi = random::direct_sum_iso(p, Cone::effect, rng);
  phi.pi = {1, 0};
  const auto oracle = make_oracle(phi);
  const auto d = decompose_effect_iso(oracle);
  CHECK(d.pi == std::vector<std::size_t>{1, 0});
  CHECK(max_sample_error(d, oracle, 100, 5) <= 1e-8);
  for (std::size_t j = 0; j < 2; ++j) {
    const Matrixd x = random::in_cone(2, Cone::effect, rng);
    CHECK(dist(d.factors[j](x), canonical_apply(phi.blocks[j], x, Cone::effect)) <= 1e-8);
  }
}

TEST_CASE("identity oracle decomposes trivially") {
  const BlockProfile p({2, 1, 3});
  for (Cone cone : {Cone::effect, Cone::positive, Cone::self_adjoint}) {
    const auto d = decompose_iso(make_oracle(identity_iso(p, cone)));
    CHECK(d.pi == std::vector<std::size_t>{0, 1, 2});
    random::Rng rng(72);
    const Matrixd x = random::in_cone(3, cone, rng);
    CHECK(dist(d.factors[2](x), x) <= 1e-12);
  }
}

TEST_CASE("dimensions force the permutation") {
  random::Rng rng(73);
  for (int t = 0; t < 10; ++t) {
    const auto phi = random::direct_sum_iso(BlockProfile({2, 3}), Cone::effect, rng);
    CHECK(decompose_effect_iso(make_oracle(phi)).pi == std::vector<std::size_t>{0, 1});
  }
}

TEST_CASE("self-adjoint decomposition and the shift") {
  random::Rng rng(74);
  const BlockProfile p({2, 2});
  const auto base = random::direct_sum_iso(p, Cone::self_adjoint, rng);
  const auto d0 = decompose_sa_iso(make_oracle(base));
  CHECK(d0.shift.norm() <= 1e-12);

  const auto shift = DirectSumElement::from_blocks(p, {Matrixd::Identity(2, 2), 2 * Matrixd::Identity(2, 2)});
  const auto forward = make_oracle(base).forward;
  const auto shifted = lambda_oracle(p, Cone::self_adjoint, [=](const DirectSumElement& x) { return forward(x) + shift; });
  const auto d = decompose_sa_iso(shifted);
  CHECK(max_distance(d.shift, shift) <= 1e-8);
  CHECK(d.pi == base.pi);
  CHECK(max_sample_error(d, shifted, 100, 6) <= 1e-8);
}

TEST_CASE("self-adjoint oracle mixing positive and negative parts across blocks is rejected") {
  // (x1, x2) -> (x1+ - x2-, x2+ - x1-) sends z1 - z2 to zero, inside the positive cone
  const BlockProfile p({1, 1});
  const auto mix = lambda_oracle(p, Cone::self_adjoint, [](const DirectSumElement& x) {
    const double a = x.blocks[0](0, 0).real(), b = x.blocks[1](0, 0).real();
    auto pos = [](double t) { return std::max(t, 0.0); };
    auto neg = [](double t) { return std::max(-t, 0.0); };
    return DirectSumElement::from_blocks(x.profile, {diag({pos(a) - neg(b)}), diag({pos(b) - neg(a)})});
  });
  CHECK_THROWS_AS(decompose_sa_iso(mix), RecoveryError);
}

TEST_CASE("non-isomorphisms are rejected") {
  const BlockProfile p({2, 2});
  const auto half = lambda_oracle(p, Cone::effect, [](const DirectSumElement& x) { return 0.5 * x; });
  CHECK_THROWS_AS(decompose_effect_iso(half), RecoveryError);

  const auto off_center = lambda_oracle(p, Cone::self_adjoint, [](const DirectSumElement& x) {
    DirectSumElement y = x;
    y.blocks[0] += diag({1, 0});
    return y;
  });
  CHECK_THROWS_AS(decompose_sa_iso(off_center), RecoveryError);

  // blockwise scaling by a non-monotone factor in one block: verification catches it
  const auto mixing = lambda_oracle(p, Cone::positive, [](const DirectSumElement& x) {
    DirectSumElement y = x;
    y.blocks[1] = x.blocks[1] + 0.1 * x.blocks[0].trace().real() * Matrixd::Identity(2, 2);
    return y;
  });
  CHECK_THROWS_AS(decompose_positive_iso(mixing), RecoveryError);

  // central atom of a 1-dimensional block sent to the 2-dimensional one
  OrderIsoOracle mismatch{BlockProfile({1, 2}), BlockProfile({2, 1}), Cone::effect, {}, {}};
  mismatch.forward = [](const DirectSumElement& x) {
    return DirectSumElement::from_blocks(BlockProfile({2, 1}), {x.blocks[0](0, 0).real() * Matrixd::Identity(2, 2),
                                                               x.blocks[1].block(0, 0, 1, 1)});
  };
  mismatch.inverse = mismatch.forward;
  CHECK_THROWS_AS(decompose_effect_iso(mismatch), RecoveryError);
}

TEST_CASE("recover_factor_canonical with a unitary lattice part") {
  random::Rng rng(75);
  const Matrixd u = random::unitary(3, rng);
  const FactorCanonicalIso truth{MonotoneBijection::identity(), ProjectionIsomorphism(u)};
  const FactorMap phi = [&](const Matrixd& x) { return canonical_apply(truth, x, Cone::effect); };
  RecoveryOptions o;
  o.verify_samples = 200;
  const auto rec = recover_factor_canonical(phi, 3, Cone::effect, {}, o);
  CHECK(rec.residual <= 1e-8);
  // tau agrees with u up to a scalar on every rank-one projection
  for (int t = 0; t < 20; ++t) {
    const auto p = random::projection(3, 1, rng);
    CHECK(dist(rec.iso.tau()(p).matrix(), ProjectionIsomorphism(u)(p).matrix()) <= 1e-8);
  }
}

TEST_CASE("recover_factor_canonical on the identity") {
  const FactorMap phi = [](const Matrixd& x) { return x; };
  const auto rec = recover_factor_canonical(phi, 2, Cone::effect);
  for (double t : {0.0, 0.3, 0.9}) CHECK(rec.iso.f(t) == doctest::Approx(t));
  const Matrixd tm = rec.iso.tau().matrix();
  CHECK(dist(tm / tm(0, 0), Matrixd::Identity(2, 2)) <= 1e-10);
  CHECK_FALSE(rec.iso.tau().antilinear());
}

TEST_CASE("recover_factor_canonical fits t^2 on effects") {
  const FactorMap phi = [](const Matrixd& x) { return Matrixd(x * x); };
  const auto rec = recover_factor_canonical(phi, 2, Cone::effect);
  for (std::size_t i = 0; i < rec.grid.points.size(); ++i) {
    const double t = rec.grid.points[i];
    CHECK(std::abs(rec.iso.f(t) - t * t) <= 1e-6);
  }
  CHECK(rec.fit == "power");
}

TEST_CASE("recover_factor_canonical locates kinks of piecewise-linear maps") {
  random::Rng rng(76);
  for (int t = 0; t < 30; ++t) {
    const Cone cone = std::array{Cone::effect, Cone::positive, Cone::self_adjoint}[t % 3];
    const Index n = 1 + t % 3;
    random::IsoOptions o;
    o.antilinear = t % 2 == 1;
    const auto iso = random::direct_sum_iso(BlockProfile::single(n), cone, rng, o);
    const auto& truth = iso.blocks[0];
    const FactorMap phi = [&](const Matrixd& x) { return canonical_apply(truth, x, cone); };
    const auto rec = recover_factor_canonical(phi, n, cone);
    CHECK(rec.fit == "pl");
    CHECK(rec.residual <= 1e-8);
    const auto& knots = truth.f.as_piecewise_linear();
    for (double x : knots.xs) CHECK(std::abs(rec.iso.f(x) - truth.f(x)) <= 1e-9);
    if (n > 1) CHECK(rec.iso.tau().antilinear() == o.antilinear);
  }
}

TEST_CASE("recover_factor_canonical rejects maps that are not scalar on scalars") {
  const FactorMap phi = [](const Matrixd& x) { return Matrixd(x + 0.1 * x.trace() * diag({1, 0})); };
  CHECK_THROWS_AS(recover_factor_canonical(phi, 2, Cone::positive), RecoveryError);
}

TEST_CASE("is_orthoiso") {
  random::Rng rng(77);
  const BlockProfile p({2, 3});
  random::IsoOptions jordan;
  jordan.jordan = true;
  const auto good = is_orthoiso(make_oracle(random::direct_sum_iso(p, Cone::effect, rng, jordan)), 200);
  CHECK(good.orthoisomorphism);
  CHECK_FALSE(good.witness.has_value());

  CHECK(is_orthoiso(make_oracle(identity_iso(p, Cone::positive)), 100).orthoisomorphism);

  const auto bad = is_orthoiso(make_oracle(random::direct_sum_iso(p, Cone::effect, rng)), 500);
  CHECK_FALSE(bad.orthoisomorphism);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->input_orthogonal);
  CHECK(bad.witness->input_product <= 1e-10);
  CHECK(bad.witness->image_product > 1e-6);
}

TEST_CASE("canonical effect isomorphisms map scalar atoms to scalar atoms") {
  random::Rng rng(78);
  for (int t = 0; t < 50; ++t) {
    const BlockProfile p({2, 3});
    const auto phi = random::direct_sum_iso(p, Cone::effect, rng);
    const std::size_t j = t % 2;
    std::uniform_real_distribution<double> u(0.1, 1);
    const auto x = embed(p, j, u(rng) * random::projection(p.dim(j), 1, rng).matrix());
    const auto image = atom_scalar_decompose(ds_iso_apply(phi, x), Cone::effect);
    REQUIRE(image.has_value());
    const auto top = ds_iso_apply(phi, embed(p, j, random::projection(p.dim(j), 1, rng).matrix()));
    const auto unit = atom_scalar_decompose(top, Cone::effect);
    REQUIRE(unit.has_value());
    CHECK(unit->scale == doctest::Approx(1));
  }
}
