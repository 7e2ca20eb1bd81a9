#include "speclat/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>

#include "speclat/random.hpp"
#include "speclat/recovery.hpp"
#include "speclat/selftest.hpp"

namespace speclat::cli {

namespace {

using io::Json;

constexpr std::string_view kTypeI2Flag =
    "type-I2: a block has dimension 2; orthoisomorphism and Jordan-form conclusions are not guaranteed there";

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", r);
  return buf;
}

/// Input problem (exit code 2) that is not a JSON parse error.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  Toleranced tol;
  std::uint64_t seed = 1;
  std::vector<std::string> inputs;  // raw file contents, in argument order

  std::string load(const std::string& path) {
    inputs.push_back(io::read_text(path));
    return inputs.back();
  }
  io::ElementDocument element(const std::string& path) {
    return io::element_from_json(io::parse_text(load(path), path), tol);
  }
  DirectSumIso iso(const std::string& path) { return io::iso_from_json(io::parse_text(load(path), path), tol); }
  std::string digest() const {
    std::string chained;
    for (const auto& s : inputs) chained += io::sha256_hex(s);
    return io::sha256_hex(chained);
  }
};

void same_profile(const BlockProfile& a, const BlockProfile& b, const std::string& what) {
  if (a != b) throw InputError("profile mismatch between " + what);
}

Json witness_pair(const std::string& xn, const DirectSumElement& x, const std::string& yn,
                  const DirectSumElement& y, Cone cone) {
  return Json{{xn, io::element_to_json(x, cone)}, {yn, io::element_to_json(y, cone)}};
}

Report cmd_order(Context& ctx, const std::string& a, const std::string& b) {
  const auto x = ctx.element(a), y = ctx.element(b);
  same_profile(x.element.profile, y.element.profile, "x and y");
  Report r;
  r.verdicts.push_back({"x ⪯ y", ds_spec_leq(x.element, y.element, ctx.tol)});
  r.result["loewner_leq"] = is_psd<double>(Matrixd((y.element - x.element).assemble()), ctx.tol);
  return r;
}

Report cmd_lattice(Context& ctx, const std::vector<std::string>& files, bool join, const std::string& out) {
  std::vector<DirectSumElement> xs;
  std::optional<Cone> cone;
  for (const auto& f : files) {
    auto doc = ctx.element(f);
    if (!xs.empty()) same_profile(xs.front().profile, doc.element.profile, "arguments");
    if (cone && *cone != doc.cone) throw InputError("arguments belong to different cones");
    cone = doc.cone;
    xs.push_back(std::move(doc.element));
  }
  const DirectSumElement m = join ? ds_join(xs, *cone, ctx.tol) : ds_meet(xs, *cone, ctx.tol);
  Report r;
  r.verdicts.push_back({"result in cone", in_cone(m, *cone, ctx.tol)});
  r.result["element"] = io::element_to_json(m, *cone);
  if (!out.empty()) io::emit_element(m, *cone, out);
  return r;
}

Report cmd_family(Context& ctx, const std::string& a) {
  const auto x = ctx.element(a);
  Report r;
  Json blocks = Json::array();
  double worst = 0;
  for (const auto& f : ds_family(x.element, ctx.tol)) blocks.push_back(io::family_to_json(f));
  for (std::size_t j = 0; j < x.element.blocks.size(); ++j) {
    const auto f = family_of<double>(x.element.blocks[j], ctx.tol);
    worst = std::max(worst, max_norm(element_of(f, ctx.tol) - x.element.blocks[j]));
  }
  r.verdicts.push_back({"family reconstructs x", worst <= ctx.tol.eps_recon, worst});
  r.result["families"] = std::move(blocks);
  return r;
}

Report cmd_posneg(Context& ctx, const std::string& a) {
  const auto x = ctx.element(a);
  const auto parts = ds_pos_neg_parts(x.element, ctx.tol);
  Report r;
  const double split = max_distance(parts.positive - parts.negative, x.element);
  double product = 0;
  for (std::size_t j = 0; j < parts.positive.blocks.size(); ++j)
    product = std::max(product, max_norm(parts.positive.blocks[j] * parts.negative.blocks[j]));
  r.verdicts.push_back({"x = x+ - x-", split <= ctx.tol.eps_recon, split});
  r.verdicts.push_back({"x+ x- = 0", product <= ctx.tol.eps_recon, product});
  r.result["positive"] = io::element_to_json(parts.positive, Cone::positive);
  r.result["negative"] = io::element_to_json(parts.negative, Cone::positive);
  return r;
}

Report cmd_atoms(Context& ctx, const std::string& a) {
  const auto x = ctx.element(a);
  const auto atom = atom_scalar_decompose(x.element, x.cone, ctx.tol);
  Report r;
  r.verdicts.push_back({"scalar multiple of an atomic projection", atom.has_value()});
  if (atom) {
    r.result["block"] = atom->block + 1;
    r.result["scale"] = atom->scale;
    r.result["atom"] = io::matrix_to_json(atom->atom.matrix());
  }
  return r;
}

Report cmd_center(Context& ctx, const std::string& a, std::size_t samples) {
  const auto z = ctx.element(a);
  const BlockProfile& p = z.element.profile;
  Report r;
  const bool central = is_central(z.element, ctx.tol);
  r.verdicts.push_back({"central", central});
  random::Rng rng(ctx.seed);
  const Matrixd zm = z.element.assemble();
  double worst = 0;
  const std::size_t budget = central ? std::min<std::size_t>(samples, 50) : samples;
  for (std::size_t s = 0; s < budget; ++s) {
    const DirectSumElement x = random::element(p, Cone::self_adjoint, rng);
    const DirectSumElement y = random::element(p, Cone::self_adjoint, rng);
    const double res = distributive_residual<double>(zm, x.assemble(), y.assemble(), Cone::self_adjoint, ctx.tol);
    worst = std::max(worst, res);
    if (res > ctx.tol.eps_recon) {
      Json w = witness_pair("x", x, "y", y, Cone::self_adjoint);
      w["residual"] = res;
      r.witnesses.push_back(std::move(w));
      break;
    }
  }
  Verdict d{"distributive on sampled pairs", r.witnesses.empty(), worst};
  if (!d.pass) d.detail = "z v (x ^ y) differs from (z v x) ^ (z v y)";
  r.verdicts.push_back(std::move(d));
  return r;
}

Report cmd_apply(Context& ctx, const std::string& iso_path, const std::string& a, const std::string& out) {
  const DirectSumIso phi = ctx.iso(iso_path);
  const auto x = ctx.element(a);
  same_profile(phi.domain, x.element.profile, "the isomorphism domain and the element");
  if (!in_cone(x.element, phi.cone, ctx.tol))
    throw InputError("element lies outside the " + std::string(to_string(phi.cone)) + " cone of the isomorphism");
  const DirectSumElement y = ds_iso_apply(phi, x.element, ctx.tol);
  Report r;
  r.verdicts.push_back({"image in cone", in_cone(y, phi.cone, ctx.tol)});
  r.result["element"] = io::element_to_json(y, phi.cone);
  if (!out.empty()) io::emit_element(y, phi.cone, out);
  return r;
}

Report cmd_decompose(Context& ctx, const std::string& iso_path) {
  const DirectSumIso phi = ctx.iso(iso_path);
  Report r;
  if (phi.has_two_dimensional_block()) r.flags.emplace_back(kTypeI2Flag);
  RecoveryOptions options;
  options.seed = ctx.seed;
  const OrderIsoOracle oracle = make_oracle(phi, ctx.tol);
  Decomposition d;
  try {
    d = decompose_iso(oracle, ctx.tol, options);
  } catch (const RecoveryError& e) {
    r.verdicts.push_back({"block structure verified", false, std::nullopt, e.what()});
    return r;
  }
  r.verdicts.push_back({"block structure verified", true, d.verification_residual});
  Json pi = Json::array();
  for (auto p : d.pi) pi.push_back(p + 1);
  r.result["pi"] = std::move(pi);
  if (phi.cone == Cone::self_adjoint) r.result["shift"] = io::element_to_json(d.shift, Cone::self_adjoint);
  Json blocks = Json::array();
  for (std::size_t j = 0; j < d.factors.size(); ++j) {
    const std::string name = "block " + std::to_string(j + 1) + " canonical form";
    Json b{{"domain_block", j + 1}, {"codomain_block", d.codomain_block(j) + 1}};
    try {
      const auto rec = recover_factor_canonical(d.factors[j], phi.domain.dim(j), phi.cone, ctx.tol, options);
      const ProjectionIsomorphism tau = rec.iso.tau();
      b["fit"] = rec.fit;
      b["f"] = io::monotone_to_json(rec.iso.f);
      b["grid"] = {{"t", rec.grid.points}, {"f", rec.grid.values}};
      b["tau"] = {{"T", io::matrix_to_json(tau.matrix())}, {"antilinear", tau.antilinear()}};
      b["residual"] = rec.residual;
      r.verdicts.push_back({name, true, rec.residual});
    } catch (const RecoveryError& e) {
      r.verdicts.push_back({name, false, std::nullopt, e.what()});
    }
    blocks.push_back(std::move(b));
  }
  r.result["blocks"] = std::move(blocks);
  return r;
}

Report cmd_verify(Context& ctx, const std::string& iso_path, bool ortho, std::size_t trials) {
  const DirectSumIso phi = ctx.iso(iso_path);
  const DirectSumIso inv = phi.inverse();
  Report r;
  random::Rng rng(ctx.seed);
  double round_trip = 0, homomorphism = 0;
  std::optional<Json> order_witness;
  for (std::size_t s = 0; s < trials; ++s) {
    const DirectSumElement x = random::element(phi.domain, phi.cone, rng);
    const DirectSumElement y = random::element(phi.domain, phi.cone, rng);
    const DirectSumElement fx = ds_iso_apply(phi, x, ctx.tol), fy = ds_iso_apply(phi, y, ctx.tol);
    round_trip = std::max(round_trip, max_distance(ds_iso_apply(inv, fx, ctx.tol), x));
    const std::vector<DirectSumElement> in{x, y}, im{fx, fy};
    const DirectSumElement j = ds_join(in, phi.cone, ctx.tol);
    homomorphism = std::max(homomorphism, max_distance(ds_iso_apply(phi, j, ctx.tol), ds_join(im, phi.cone, ctx.tol)));
    const DirectSumElement m = ds_meet(in, phi.cone, ctx.tol);
    homomorphism = std::max(homomorphism, max_distance(ds_iso_apply(phi, m, ctx.tol), ds_meet(im, phi.cone, ctx.tol)));
    if (!order_witness && ds_spec_leq(x, y, ctx.tol) != ds_spec_leq(fx, fy, ctx.tol))
      order_witness = witness_pair("x", x, "y", y, phi.cone);
  }
  r.verdicts.push_back({"inverse round trip", round_trip <= ctx.tol.eps_recon, round_trip});
  r.verdicts.push_back({"preserves meets and joins", homomorphism <= 1e-6, homomorphism});
  r.verdicts.push_back({"preserves and reflects order", !order_witness});
  if (order_witness) r.witnesses.push_back(std::move(*order_witness));
  if (ortho) {
    if (phi.has_two_dimensional_block()) r.flags.emplace_back(kTypeI2Flag);
    const OrthoReport o = is_orthoiso(make_oracle(phi, ctx.tol), trials, ctx.seed, ctx.tol);
    Verdict v{"orthoisomorphism", o.orthoisomorphism};
    if (o.witness) {
      const auto& w = *o.witness;
      v.detail = w.input_orthogonal ? "xy = 0 but Phi(x)Phi(y) != 0" : "xy != 0 but Phi(x)Phi(y) = 0";
      Json wj = witness_pair("x", w.x, "y", w.y, phi.cone);
      wj["input_product"] = w.input_product;
      wj["image_product"] = w.image_product;
      r.witnesses.push_back(std::move(wj));
    }
    r.result["ortho_trials"] = o.trials;
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

Report cmd_selftest(Context& ctx, std::size_t trials) {
  Report r;
  for (const Check& c : run_selftest(ctx.seed, trials, ctx.tol)) {
    Verdict v{c.name, c.pass, c.residual, c.detail};
    r.verdicts.push_back(std::move(v));
  }
  r.result["seed"] = ctx.seed;
  r.result["trials"] = trials;
  return r;
}

std::uint64_t seed_from_env() {
  const char* s = std::getenv("SPECLAT_SEED");
  if (!s || !*s) return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (*end) throw InputError("SPECLAT_SEED is not an unsigned integer");
  return v;
}

}  // namespace

bool Report::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

Json Report::to_json() const {
  Json vs = Json::array();
  for (const auto& v : verdicts) {
    Json j{{"name", v.name}, {"pass", v.pass}};
    if (v.residual) j["residual"] = *v.residual;
    if (!v.detail.empty()) j["detail"] = v.detail;
    vs.push_back(std::move(j));
  }
  return Json{{"command", command},   {"inputs_digest", inputs_digest}, {"pass", pass()},
              {"verdicts", std::move(vs)}, {"witnesses", witnesses},         {"flags", flags},
              {"result", result}};
}

std::string Report::to_text() const {
  std::ostringstream s;
  s << command << "  inputs sha256:" << inputs_digest.substr(0, 16) << '\n';
  for (const auto& v : verdicts) {
    s << v.name << ": " << (v.pass ? "true" : "false");
    if (v.residual) s << " (residual " << format_residual(*v.residual) << ")";
    if (!v.detail.empty()) s << "  " << v.detail;
    s << '\n';
  }
  for (const auto& f : flags) s << "flag: " << f << '\n';
  if (!witnesses.empty()) s << "witnesses:\n" << witnesses.dump(2) << '\n';
  for (const auto& [key, value] : result.items()) s << key << ": " << value.dump() << '\n';
  return s.str();
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral order toolkit for Hermitian matrices and direct sums of matrix factors", "speclat"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  Context ctx;
  bool json = false;
  std::optional<std::uint64_t> seed;
  app.add_flag("--json", json, "Machine-readable JSON report");
  app.add_option("--tol-eig", ctx.tol.eps_eig, "Eigenvalue cluster width");
  app.add_option("--tol-proj", ctx.tol.eps_proj, "Projection residual bound");
  app.add_option("--tol-recon", ctx.tol.eps_recon, "Reconstruction residual bound");
  app.add_option("--seed", seed, "Seed for randomized checks (default: $SPECLAT_SEED or 1)");

  std::string a, b, out_path;
  std::vector<std::string> files;
  bool ortho = false;
  std::size_t trials = 200, samples = 10000;

  auto* order = app.add_subcommand("order", "Test x ⪯ y");
  order->add_option("x", a)->required();
  order->add_option("y", b)->required();
  auto* meet = app.add_subcommand("meet", "Spectral infimum of elements");
  meet->add_option("elements", files)->required();
  meet->add_option("--out", out_path, "Also write the result element here");
  auto* join = app.add_subcommand("join", "Spectral supremum of elements");
  join->add_option("elements", files)->required();
  join->add_option("--out", out_path, "Also write the result element here");
  auto* family = app.add_subcommand("family", "Spectral family of an element");
  family->add_option("x", a)->required();
  auto* posneg = app.add_subcommand("posneg", "Positive and negative parts");
  posneg->add_option("x", a)->required();
  auto* atoms = app.add_subcommand("atoms", "Test for a scalar multiple of an atomic projection");
  atoms->add_option("x", a)->required();
  auto* center = app.add_subcommand("center", "Test centrality and distributivity");
  center->add_option("z", a)->required();
  center->add_option("--samples", samples, "Pairs sampled for a distributivity witness");
  auto* apply = app.add_subcommand("apply-iso", "Apply a direct-sum isomorphism to an element");
  apply->add_option("iso", a)->required();
  apply->add_option("x", b)->required();
  apply->add_option("--out", out_path, "Also write the image element here");
  auto* decompose = app.add_subcommand("decompose", "Recover block structure and canonical factors of an isomorphism");
  decompose->add_option("iso", a)->required();
  auto* verify = app.add_subcommand("verify-iso", "Check isomorphism properties on random samples");
  verify->add_option("iso", a)->required();
  verify->add_flag("--ortho", ortho, "Also test whether orthogonality is preserved");
  verify->add_option("--trials", trials, "Random samples");
  auto* selftest = app.add_subcommand("selftest", "Run the randomized invariant suite");
  selftest->add_option("--trials", trials, "Instances per check")->default_val(50);

  std::vector<const char*> argv{"speclat"};
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Report report;
  try {
    ctx.tol.validate();
    ctx.seed = seed ? *seed : seed_from_env();
    if (order->parsed()) report = cmd_order(ctx, a, b);
    else if (meet->parsed()) report = cmd_lattice(ctx, files, false, out_path);
    else if (join->parsed()) report = cmd_lattice(ctx, files, true, out_path);
    else if (family->parsed()) report = cmd_family(ctx, a);
    else if (posneg->parsed()) report = cmd_posneg(ctx, a);
    else if (atoms->parsed()) report = cmd_atoms(ctx, a);
    else if (center->parsed()) report = cmd_center(ctx, a, samples);
    else if (apply->parsed()) report = cmd_apply(ctx, a, b, out_path);
    else if (decompose->parsed()) report = cmd_decompose(ctx, a);
    else if (verify->parsed()) report = cmd_verify(ctx, a, ortho, trials);
    else report = cmd_selftest(ctx, trials);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    if (json) out << Json{{"command", name}, {"error", e.what()}}.dump(2) << '\n';
    return kInputError;
  }
  report.command = name;
  report.inputs_digest = ctx.digest();
  out << (json ? report.to_json().dump(2) + "\n" : report.to_text());
  return report.pass() ? kPass : kFail;
}

}  // namespace speclat::cli
