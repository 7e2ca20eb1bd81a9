#include "speclat/io.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

namespace speclat::io {

namespace {

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(path + "." + key, "missing field");
  return *it;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

bool boolean(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path, "expected a boolean");
  return j.get<bool>();
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

std::vector<double> numbers(const Json& j, const std::string& path) {
  std::vector<double> out;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(number(j[i], at(path, i)));
  return out;
}

void check_version(const Json& j) {
  const Json& v = field(j, "schema_version", "$");
  if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
    throw ParseError("$.schema_version", "unsupported schema version");
}

Cone cone_field(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected one of \"sa\", \"pos\", \"eff\"");
  try {
    return parse_cone(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, e.what());
  }
}

}  // namespace

Json matrix_to_json(const Matrixd& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrixd matrix_from_json(const Json& j, const std::string& path) {
  const std::size_t rows = array(j, path).size();
  if (rows == 0) throw ParseError(path, "empty matrix");
  const std::size_t cols = array(j[0], at(path, 0)).size();
  Matrixd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = at(path, r);
    if (array(j[r], rp).size() != cols) throw ParseError(rp, "ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string ep = at(rp, c);
      const Json& e = j[r][c];
      if (!e.is_array() || e.size() != 2) throw ParseError(ep, "expected [re, im]");
      m(r, c) = {number(e[0], ep + "[0]"), number(e[1], ep + "[1]")};
    }
  }
  return m;
}

Json profile_to_json(const BlockProfile& p) { return Json(p.dims); }

BlockProfile profile_from_json(const Json& j, const std::string& path) {
  std::vector<Index> dims;
  for (std::size_t i = 0; i < array(j, path).size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() <= 0)
      throw ParseError(at(path, i), "expected a positive integer");
    dims.push_back(j[i].get<Index>());
  }
  if (dims.empty()) throw ParseError(path, "empty profile");
  return BlockProfile(std::move(dims));
}

Json element_to_json(const DirectSumElement& x, Cone cone) {
  Json blocks = Json::array();
  for (const auto& b : x.blocks) blocks.push_back(matrix_to_json(b));
  return Json{{"schema_version", kSchemaVersion},
              {"profile", profile_to_json(x.profile)},
              {"blocks", std::move(blocks)},
              {"cone", to_string(cone)}};
}

ElementDocument element_from_json(const Json& j, const Toleranced& tol) {
  check_version(j);
  const BlockProfile profile = profile_from_json(field(j, "profile", "$"), "$.profile");
  const Json& blocks = array(field(j, "blocks", "$"), "$.blocks");
  if (blocks.size() != profile.size())
    throw ParseError("$.blocks", "expected " + std::to_string(profile.size()) + " blocks");
  ElementDocument doc;
  doc.cone = cone_field(field(j, "cone", "$"), "$.cone");
  std::vector<Matrixd> ms;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string path = at("$.blocks", b);
    Matrixd m = matrix_from_json(blocks[b], path);
    if (m.rows() != profile.dim(b) || m.cols() != profile.dim(b))
      throw ParseError(path, "shape does not match profile dimension " + std::to_string(profile.dim(b)));
    if (!is_hermitian<double>(m, tol)) throw ParseError(path, "block is not Hermitian");
    ms.push_back(std::move(m));
  }
  doc.element = DirectSumElement::from_blocks(profile, std::move(ms), tol);
  if (!in_cone(doc.element, doc.cone, tol))
    throw ParseError("$.blocks", "element lies outside the " + std::string(to_string(doc.cone)) + " cone");
  return doc;
}

Json monotone_to_json(const MonotoneBijection& f) {
  if (f.is_power()) {
    const auto& p = f.as_power();
    return Json{{"kind", "power"}, {"data", {{"exponent", p.exponent}, {"scale", p.scale}}}};
  }
  const auto& pl = f.as_piecewise_linear();
  return Json{{"kind", "pl"}, {"data", {{"xs", pl.xs}, {"ys", pl.ys}}}};
}

MonotoneBijection monotone_from_json(const Json& j, const std::string& path) {
  const Json& kind = field(j, "kind", path);
  const Json& data = field(j, "data", path);
  const std::string dp = path + ".data";
  try {
    if (kind == "pl")
      return MonotoneBijection::piecewise_linear(numbers(field(data, "xs", dp), dp + ".xs"),
                                                 numbers(field(data, "ys", dp), dp + ".ys"));
    if (kind == "power") {
      const double scale = data.is_object() && data.contains("scale") ? number(data["scale"], dp + ".scale") : 1.0;
      return MonotoneBijection::power(number(field(data, "exponent", dp), dp + ".exponent"), scale);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(dp, e.what());
  }
  throw ParseError(path + ".kind", "expected \"pl\" or \"power\"");
}

Json iso_to_json(const DirectSumIso& phi) {
  Json pi = Json::array();
  for (auto p : phi.pi) pi.push_back(p + 1);
  Json blocks = Json::array();
  for (const auto& b : phi.blocks) {
    Json entry = Json::object();
    if (b.is_jordan()) {
      const auto& psi = std::get<JordanIso>(b.lattice);
      entry["jordan"] = {{"u", matrix_to_json(psi.unitary())}, {"transpose", psi.transpose()}};
    } else {
      const auto& tau = std::get<ProjectionIsomorphism>(b.lattice);
      entry["tau"] = {{"T", matrix_to_json(tau.matrix())}, {"antilinear", tau.antilinear()}};
    }
    entry["f"] = monotone_to_json(b.f);
    blocks.push_back(std::move(entry));
  }
  return Json{{"schema_version", kSchemaVersion},
              {"domain_profile", profile_to_json(phi.domain)},
              {"codomain_profile", profile_to_json(phi.codomain)},
              {"cone", to_string(phi.cone)},
              {"pi", std::move(pi)},
              {"blocks", std::move(blocks)}};
}

DirectSumIso iso_from_json(const Json& j, const Toleranced& tol) {
  (void)tol;
  check_version(j);
  DirectSumIso phi;
  phi.domain = profile_from_json(field(j, "domain_profile", "$"), "$.domain_profile");
  phi.codomain = profile_from_json(field(j, "codomain_profile", "$"), "$.codomain_profile");
  if (j.contains("cone")) phi.cone = cone_field(j["cone"], "$.cone");
  const Json& pi = array(field(j, "pi", "$"), "$.pi");
  for (std::size_t k = 0; k < pi.size(); ++k) {
    if (!pi[k].is_number_integer() || pi[k].get<long long>() < 1)
      throw ParseError(at("$.pi", k), "expected a 1-based block index");
    phi.pi.push_back(pi[k].get<std::size_t>() - 1);
  }
  const Json& blocks = array(field(j, "blocks", "$"), "$.blocks");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string path = at("$.blocks", b);
    FactorCanonicalIso c;
    c.f = monotone_from_json(field(blocks[b], "f", path), path + ".f");
    try {
      if (blocks[b].contains("jordan")) {
        const Json& jd = blocks[b]["jordan"];
        const bool transpose = jd.contains("transpose") && boolean(jd["transpose"], path + ".jordan.transpose");
        c.lattice = JordanIso(matrix_from_json(field(jd, "u", path + ".jordan"), path + ".jordan.u"), transpose);
      } else {
        const Json& td = field(blocks[b], "tau", path);
        const bool anti = td.contains("antilinear") && boolean(td["antilinear"], path + ".tau.antilinear");
        c.lattice = ProjectionIsomorphism(matrix_from_json(field(td, "T", path + ".tau"), path + ".tau.T"), anti);
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
    phi.blocks.push_back(std::move(c));
  }
  try {
    phi.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError("$", e.what());
  }
  return phi;
}

Json family_to_json(const SpectralFamilyd& f) {
  Json steps = Json::array();
  for (std::size_t i = 0; i < f.size(); ++i)
    steps.push_back({{"lambda", f.breakpoints[i]},
                     {"rank", f.cumulative[i].rank()},
                     {"projection", matrix_to_json(f.cumulative[i].matrix())}});
  return Json{{"dim", f.dim}, {"steps", std::move(steps)}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json parse_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source, std::string("malformed JSON: ") + e.what());
  }
}

ElementDocument parse_element(const std::filesystem::path& path, const Toleranced& tol) {
  return element_from_json(parse_text(read_text(path), path.string()), tol);
}

void emit_element(const DirectSumElement& x, Cone cone, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << element_to_json(x, cone).dump(2) << '\n';
}

DirectSumIso parse_iso(const std::filesystem::path& path, const Toleranced& tol) {
  return iso_from_json(parse_text(read_text(path), path.string()), tol);
}

void emit_iso(const DirectSumIso& phi, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << iso_to_json(phi).dump(2) << '\n';
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

}  // namespace speclat::io
