// Acceptance gate: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oracles.hpp"
#include "speclat/projection_lattice.hpp"
#include "speclat/random.hpp"
#include "speclat/recovery.hpp"

using namespace speclat;

namespace {

// Pinned tolerances.
constexpr double kPsdFloor = -1e-8;
constexpr double kRoundTrip = 1e-8;
constexpr double kLattice = 1e-8;
constexpr double kIdentity = 1e-8;
constexpr double kShift = 1e-8;
constexpr double kReassembly = 1e-6;
constexpr double kGrid = 1e-6;
constexpr double kFamilySeconds = 10;
constexpr double kRecoverySeconds = 60;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d  %-52s %s  %s\n", id, title.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
}

random::Rng rng_for(int criterion) { return random::Rng(1000 + criterion); }

Matrixd product(const DirectSumElement& a, const DirectSumElement& b) { return a.assemble() * b.assemble(); }

DirectSumElement blockwise(const DirectSumElement& x, const std::function<Matrixd(const Matrixd&)>& g) {
  DirectSumElement out = x;
  for (auto& b : out.blocks) b = g(b);
  return out;
}

BlockProfile small_profile(random::Rng& rng) {
  std::vector<Index> dims(std::uniform_int_distribution<int>(1, 3)(rng));
  for (auto& d : dims) d = std::uniform_int_distribution<Index>(1, 3)(rng);
  return BlockProfile(std::move(dims));
}

// 1 ------------------------------------------------------------------------

Outcome spectral_family_axioms() {
  auto rng = rng_for(1);
  const auto t0 = Clock::now();
  double worst_psd = 0, worst_round = 0;
  for (int t = 0; t < 1000; ++t) {
    const Index n = 1 + t % 6;
    const Matrixd x = random::hermitian(n, rng);
    const auto f = family_of<double>(x);
    const Matrixd id = Matrixd::Identity(n, n);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double l = f.breakpoints[i];
      const Matrixd e = f.cumulative[i].matrix();
      worst_psd = std::min(worst_psd, oracle::min_eig(l * e - x * e));
      worst_psd = std::min(worst_psd, oracle::min_eig(x * (id - e) - l * (id - e)));
    }
    worst_round = std::max(worst_round, oracle::max_abs(element_of(f) - x));
  }
  const double secs = seconds_since(t0);
  const bool pass = worst_psd >= kPsdFloor && worst_round <= kRoundTrip && secs < kFamilySeconds;
  return {pass, "1000 matrices, min PSD residual " + fmt(worst_psd) + ", round trip " + fmt(worst_round) + ", " +
                    fmt(secs) + " s"};
}

// 2 ------------------------------------------------------------------------

Outcome projection_order() {
  auto rng = rng_for(2);
  int disagree = 0, oracle_disagree = 0, holds = 0;
  for (int t = 0; t < 500; ++t) {
    const Index n = 1 + t % 5;
    std::uniform_int_distribution<Index> rank(0, n);
    Projectiond p = random::projection(n, rank(rng), rng), q;
    switch (t % 5) {
      case 0: q = proj_join(p, random::projection(n, rank(rng), rng)); break;  // nested
      case 1: q = p; break;
      case 2: q = Projectiond::zero(n); break;
      case 3: q = Projectiond::identity(n); break;
      default: q = random::projection(n, rank(rng), rng);
    }
    if (t % 2) std::swap(p, q);
    const bool s = spec_leq<double>(p.matrix(), q.matrix());
    const bool o = proj_leq(p, q);
    disagree += s != o;
    oracle_disagree += s != oracle::range_leq(p.matrix(), q.matrix());
    holds += s;
  }
  return {disagree == 0 && oracle_disagree == 0,
          "500 pairs (" + std::to_string(holds) + " comparable), disagreements " + std::to_string(disagree) +
              ", vs range containment " + std::to_string(oracle_disagree)};
}

// 3 ------------------------------------------------------------------------

Outcome loewner_separation() {
  auto rng = rng_for(3);
  int comparable = 0, violations = 0;
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const Index n = 1 + t % 5;
    const Matrixd x = random::hermitian(n, rng);
    Matrixd y = random::hermitian(n, rng);
    if (t % 2 == 0) y = spec_join<double>(x, y);
    if (!spec_leq<double>(x, y)) continue;
    ++comparable;
    const double m = oracle::min_eig(y - x);
    worst = std::min(worst, m);
    violations += m < kPsdFloor;
  }
  Matrixd cx = Matrixd::Zero(2, 2), cy(2, 2);
  cx(0, 0) = 1;
  cy << 2, 1, 1, 1;
  const bool loewner = oracle::min_eig(cy - cx) >= 0;
  const bool spectral = spec_leq<double>(cx, cy);
  const bool spectral_ref = oracle::spec_leq(cx, cy);
  return {violations == 0 && comparable > 400 && loewner && !spectral && !spectral_ref,
          std::to_string(comparable) + " comparable pairs, min eig(y-x) " + fmt(worst) +
              "; diag(1,0) vs [[2,1],[1,1]]: Loewner " + (loewner ? "true" : "false") + ", spectral " +
              (spectral ? "true" : "false")};
}

// 4 ------------------------------------------------------------------------

Outcome lattice_formulas() {
  auto rng = rng_for(4);
  double worst = 0;
  std::uniform_real_distribution<double> d(-2, 2);
  for (int t = 0; t < 500; ++t) {
    const Index n = 1 + t % 5;
    const int k = 2 + t % 3;
    const Matrixd u = random::unitary(n, rng);
    std::vector<RealVectord> spectra(k, RealVectord(n));
    for (int i = 0; i < k; ++i)
      for (Index a = 0; a < n; ++a)
        spectra[i](a) = (i > 0 && t % 4 == 0 && a % 2 == 0) ? spectra[0](a) : d(rng);  // occasional ties
    std::vector<Matrixd> xs;
    RealVectord lo = spectra[0], hi = spectra[0];
    for (const auto& s : spectra) {
      xs.push_back(random::with_spectrum(s, u));
      lo = lo.cwiseMin(s);
      hi = hi.cwiseMax(s);
    }
    worst = std::max(worst, oracle::max_abs(spec_meet<double>(xs) - random::with_spectrum(lo, u)));
    worst = std::max(worst, oracle::max_abs(spec_join<double>(xs) - random::with_spectrum(hi, u)));
  }

  // non-commuting pairs: bounds and sampled universal properties
  int bound_violations = 0, universal_violations = 0, uppers = 0, lowers = 0;
  double duality = 0;
  std::uniform_real_distribution<double> up(0, 1.5);
  for (int t = 0; t < 500; ++t) {
    const Index n = 2 + t % 3;
    const Matrixd x = random::hermitian(n, rng), y = random::hermitian(n, rng);
    const Matrixd j = spec_join<double>(x, y), m = spec_meet<double>(x, y);
    bound_violations += !oracle::spec_leq(x, j) + !oracle::spec_leq(y, j);
    bound_violations += !oracle::spec_leq(m, x) + !oracle::spec_leq(m, y);
    duality = std::max(duality, oracle::max_abs(m + spec_join<double>(Matrixd(-x), Matrixd(-y))));

    const double top = std::max(oracle::max_eig(x), oracle::max_eig(y));
    const double bottom = std::min(oracle::min_eig(x), oracle::min_eig(y));
    for (int c = 0; c < 8; ++c) {
      // candidates: raised spectra in either eigenbasis, or near-scalar elements at the extremes
      const Matrixd& base = c % 2 ? x : y;
      const oracle::Eig e = oracle::eig(base);
      RealVectord raised(n), lowered(n);
      for (Index a = 0; a < n; ++a) {
        raised(a) = e.values[a] + up(rng);
        lowered(a) = e.values[a] - up(rng);
      }
      Matrixd upper, lower;
      if (c < 6) {
        Eigen::HouseholderQR<Matrixd> qr(e.vectors);
        const Matrixd q = Matrixd(qr.householderQ());
        upper = random::with_spectrum(raised, q);
        lower = random::with_spectrum(lowered, q);
      } else {
        upper = top * Matrixd::Identity(n, n) + 0.05 * random::hermitian(n, rng);
        lower = bottom * Matrixd::Identity(n, n) + 0.05 * random::hermitian(n, rng);
      }
      if (oracle::spec_leq(x, upper) && oracle::spec_leq(y, upper)) {
        ++uppers;
        universal_violations += !oracle::spec_leq(j, upper);
      }
      if (oracle::spec_leq(lower, x) && oracle::spec_leq(lower, y)) {
        ++lowers;
        universal_violations += !oracle::spec_leq(lower, m);
      }
    }
  }
  const bool pass = worst <= kLattice && bound_violations == 0 && universal_violations == 0 && duality <= kLattice &&
                    uppers >= 100 && lowers >= 100;
  return {pass, "commuting max err " + fmt(worst) + "; non-commuting: " + std::to_string(uppers) + " upper / " +
                    std::to_string(lowers) + " lower bounds sampled, violations " +
                    std::to_string(bound_violations + universal_violations) + ", duality " + fmt(duality)};
}

// 5 ------------------------------------------------------------------------

Outcome lemma_suite() {
  auto rng = rng_for(5);
  constexpr int kInstances = 300;
  double central_inf = 0, sup_mult = 0, family = 0, parts = 0;
  int order_mismatch = 0;
  for (int t = 0; t < kInstances; ++t) {
    const BlockProfile p = small_profile(rng);
    std::bernoulli_distribution coin(0.5);

    // infimum with a central projection
    DirectSumElement z = DirectSumElement::zeros(p);
    for (auto& b : z.blocks)
      if (coin(rng)) b.setIdentity();
    const auto e = random::element(p, Cone::effect, rng);
    const std::vector<DirectSumElement> ze{z, e};
    central_inf = std::max(central_inf, oracle::max_abs(ds_meet(ze, Cone::effect).assemble() - product(z, e)));

    // supremum and multiplication
    const auto x = random::element(p, Cone::positive, rng);
    std::vector<DirectSumElement> pieces;
    DirectSumElement sum = DirectSumElement::zeros(p);
    for (const auto& atom : central_atoms(p)) {
      if (!coin(rng) && !pieces.empty()) continue;
      pieces.push_back(DirectSumElement::from_block_diagonal(p, product(atom, x)));
      sum += atom;
    }
    sup_mult = std::max(sup_mult, oracle::max_abs(ds_join(pieces, Cone::positive).assemble() - product(sum, x)));

    // spectral family of a direct sum
    const auto s = random::element(p, Cone::self_adjoint, rng);
    const auto fam = ds_family(s);
    const Matrixd whole = s.assemble();
    for (const auto& f : fam)
      for (double b : f.breakpoints) {
        const double l = b + 1e-9;
        DirectSumElement ev = DirectSumElement::zeros(p);
        for (std::size_t j = 0; j < p.size(); ++j) ev.blocks[j] = evaluate(fam[j], l).matrix();
        family = std::max(family, oracle::max_abs(ev.assemble() - oracle::spectral_projection(whole, l)));
      }

    // spectral order on a direct sum
    auto y = random::element(p, Cone::self_adjoint, rng);
    if (t % 2 == 0) {
      const std::vector<DirectSumElement> sy{s, y};
      y = ds_join(sy);
    }
    bool blockwise_leq = true;
    for (std::size_t j = 0; j < p.size(); ++j) blockwise_leq &= oracle::spec_leq(s.blocks[j], y.blocks[j]);
    order_mismatch += ds_spec_leq(s, y) != blockwise_leq;
    order_mismatch += blockwise_leq != oracle::spec_leq(s.assemble(), y.assemble());

    // positive and negative parts under a canonical isomorphism fixing 0
    const DirectSumIso phi = random::direct_sum_iso(p, Cone::self_adjoint, rng);
    const auto w = random::element(p, Cone::self_adjoint, rng);
    const auto image = ds_iso_apply(phi, w).assemble();
    const auto wp = blockwise(w, oracle::positive_part), wn = blockwise(w, oracle::negative_part);
    parts = std::max(parts, oracle::max_abs(oracle::positive_part(image) - ds_iso_apply(phi, wp).assemble()));
    parts = std::max(parts, oracle::max_abs(oracle::negative_part(image) + ds_iso_apply(phi, -wn).assemble()));
  }
  const double worst = std::max({central_inf, sup_mult, family, parts});
  return {worst <= kIdentity && order_mismatch == 0,
          std::to_string(kInstances) + " instances each; zx=z^x " + fmt(central_inf) + ", sup/mult " + fmt(sup_mult) +
              ", family " + fmt(family) + ", order mismatches " + std::to_string(order_mismatch) + ", parts " +
              fmt(parts)};
}

// 6 ------------------------------------------------------------------------

Outcome center_distributive() {
  auto rng = rng_for(6);
  const BlockProfile p({2, 2});
  std::uniform_real_distribution<double> d(-2, 2);
  int central_failures = 0;
  for (int c = 0; c < 5; ++c) {
    DirectSumElement z = DirectSumElement::zeros(p);
    for (auto& b : z.blocks) b = d(rng) * Matrixd::Identity(2, 2);
    if (!is_central(z)) ++central_failures;
    for (int s = 0; s < 200; ++s) {
      const Matrixd x = random::element(p, Cone::self_adjoint, rng).assemble();
      const Matrixd y = random::element(p, Cone::self_adjoint, rng).assemble();
      central_failures += !distributive_check<double>(z.assemble(), x, y);
    }
  }
  int found = 0, most = 0;
  for (int c = 0; c < 20; ++c) {
    const auto z = random::element(p, Cone::self_adjoint, rng);
    if (is_central(z)) continue;
    for (int s = 1; s <= 10000; ++s) {
      const Matrixd x = random::element(p, Cone::self_adjoint, rng).assemble();
      const Matrixd y = random::element(p, Cone::self_adjoint, rng).assemble();
      if (distributive_residual<double>(z.assemble(), x, y) > 1e-6) {
        ++found;
        most = std::max(most, s);
        break;
      }
    }
  }
  return {central_failures == 0 && found == 20,
          "central: 5 x 200 pairs, failures " + std::to_string(central_failures) + "; non-central: witnesses for " +
              std::to_string(found) + "/20, worst search " + std::to_string(most) + " samples"};
}

// 7 ------------------------------------------------------------------------

Outcome theorem_recovery() {
  auto rng = rng_for(7);
  const std::vector<BlockProfile> profiles{BlockProfile({2, 2}), BlockProfile({2, 3}), BlockProfile({2, 2, 3}),
                                           BlockProfile({3, 3})};
  const auto t0 = Clock::now();
  int pi_wrong = 0, errors = 0;
  double shift_err = 0, reassembly = 0;
  std::string first_error;
  for (int t = 0; t < 100; ++t) {
    const BlockProfile& p = profiles[t % profiles.size()];
    const Cone cone = std::array{Cone::effect, Cone::positive, Cone::self_adjoint}[(t / 4) % 3];
    random::IsoOptions o;
    o.shear = std::bernoulli_distribution(0.5)(rng);
    o.shift = cone == Cone::self_adjoint;
    const DirectSumIso phi = random::direct_sum_iso(p, cone, rng, o);
    const OrderIsoOracle oracle = make_oracle(phi);
    RecoveryOptions ro;
    ro.verify_samples = 10;
    ro.seed = rng();
    Decomposition d;
    try {
      d = decompose_iso(oracle, {}, ro);
    } catch (const RecoveryError& e) {
      if (first_error.empty()) first_error = e.what();
      ++errors;
      continue;
    }
    pi_wrong += d.pi != phi.pi;
    // expected Phi(0): f_{pi(k)}(0) in codomain block k
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double c = phi.blocks[phi.pi[k]].f(0.0);
      shift_err = std::max(shift_err, oracle::max_abs(d.shift.blocks[k] - c * Matrixd::Identity(p.dim(k), p.dim(k))));
    }
    for (int s = 0; s < 200; ++s) {
      const auto x = random::element(p, cone, rng);
      reassembly = std::max(reassembly, max_distance(d.apply(x), oracle.forward(x)));
    }
  }
  const double secs = seconds_since(t0);
  const bool pass = errors == 0 && pi_wrong == 0 && shift_err <= kShift && reassembly <= kReassembly &&
                    secs < kRecoverySeconds;
  std::string detail = "100 isomorphisms, pi wrong " + std::to_string(pi_wrong) + ", errors " +
                       std::to_string(errors) + ", shift " + fmt(shift_err) + ", reassembly " + fmt(reassembly) +
                       ", " + fmt(secs) + " s";
  if (!first_error.empty()) detail += " (" + first_error + ")";
  return {pass, detail};
}

// 8 ------------------------------------------------------------------------

Outcome ortho_discrimination() {
  auto rng = rng_for(8);
  const std::vector<BlockProfile> profiles{BlockProfile({2, 2}), BlockProfile({2, 3}), BlockProfile({3, 3}),
                                           BlockProfile({2, 2, 3})};
  int false_negatives = 0, detected = 0, bogus = 0;
  for (int t = 0; t < 20; ++t) {
    const BlockProfile& p = profiles[t % profiles.size()];
    const Cone cone = std::array{Cone::effect, Cone::positive, Cone::self_adjoint}[t % 3];
    random::IsoOptions jordan;
    jordan.jordan = true;
    jordan.antilinear = t % 2 == 1;
    const auto good = is_orthoiso(make_oracle(random::direct_sum_iso(p, cone, rng, jordan)), 500, rng());
    false_negatives += !good.orthoisomorphism;

    const auto shear_iso = random::direct_sum_iso(p, cone, rng);
    const auto bad = is_orthoiso(make_oracle(shear_iso), 1000, rng());
    if (!bad.orthoisomorphism && bad.witness) {
      // check the witness independently
      const auto& w = *bad.witness;
      const double in = oracle::max_abs(product(w.x, w.y));
      const double out = oracle::max_abs(product(ds_iso_apply(shear_iso, w.x), ds_iso_apply(shear_iso, w.y)));
      const bool genuine = w.input_orthogonal ? (in <= 1e-10 && out > 1e-6) : (in > 1e-6 && out <= 1e-10);
      detected += genuine;
      bogus += !genuine;
    }
  }
  return {false_negatives == 0 && detected >= 18 && bogus == 0,
          "Jordan: " + std::to_string(20 - false_negatives) + "/20 pass 500 trials; shear: witnesses for " +
              std::to_string(detected) + "/20 within 1000 trials"};
}

// 9 ------------------------------------------------------------------------

Outcome motivating_example() {
  const std::string cmd = std::string(SPECLAT_CLI) + " decompose --json " + SPECLAT_TEST_DATA + "/cube_iso.json";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) return {false, "cannot run the CLI"};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe.get())) out.append(buf, n);
  const int status = pclose(pipe.release());
  const auto j = nlohmann::json::parse(out);
  const bool pi_ok = j["result"]["pi"] == nlohmann::json::array({1, 2});
  double f1 = 0, f2 = 0;
  const auto& blocks = j["result"]["blocks"];
  const auto& g1 = blocks[0]["grid"];
  const auto& g2 = blocks[1]["grid"];
  for (std::size_t i = 0; i < g1["t"].size(); ++i) {
    const double t = g1["t"][i];
    f1 = std::max(f1, std::abs(g1["f"][i].get<double>() - t));
  }
  for (std::size_t i = 0; i < g2["t"].size(); ++i) {
    const double t = g2["t"][i];
    f2 = std::max(f2, std::abs(g2["f"][i].get<double>() - t * t * t));
  }
  return {status == 0 && pi_ok && f1 <= kGrid && f2 <= kGrid,
          "exit " + std::to_string(status) + ", pi " + j["result"]["pi"].dump() + ", |f1 - t| " + fmt(f1) +
              ", |f2 - t^3| " + fmt(f2) + " on " + std::to_string(g2["t"].size()) + " grid points"};
}

}  // namespace

int main() {
  report(1, "spectral family axioms and round trip", spectral_family_axioms);
  report(2, "spectral order equals projection order", projection_order);
  report(3, "spectral order implies Loewner, not conversely", loewner_separation);
  report(4, "meet and join formulas", lattice_formulas);
  report(5, "direct-sum and central-projection lemmas", lemma_suite);
  report(6, "center equals distributive elements", center_distributive);
  report(7, "block-structure recovery of isomorphisms", theorem_recovery);
  report(8, "orthoisomorphism discrimination", ortho_discrimination);
  report(9, "CLI decompose on (x, y) -> (x, y^3)", motivating_example);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
