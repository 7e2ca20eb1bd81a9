#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "speclat/isomorphism.hpp"

namespace speclat::io {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kSchemaVersion = "1";

/// Malformed document or invariant violation; `path` names the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ElementDocument {
  DirectSumElement element;
  Cone cone = Cone::self_adjoint;
};

/// Complex matrix as a row-major list of rows of [re, im] pairs.
Json matrix_to_json(const Matrixd& m);
Matrixd matrix_from_json(const Json& j, const std::string& path);

Json profile_to_json(const BlockProfile& p);
BlockProfile profile_from_json(const Json& j, const std::string& path);

Json element_to_json(const DirectSumElement& x, Cone cone);
/// Checks shapes against the profile, hermiticity per block and cone membership.
ElementDocument element_from_json(const Json& j, const Toleranced& tol = {});

Json monotone_to_json(const MonotoneBijection& f);
MonotoneBijection monotone_from_json(const Json& j, const std::string& path);

Json iso_to_json(const DirectSumIso& phi);
/// `pi` is 1-based in documents; `cone` defaults to "sa".
DirectSumIso iso_from_json(const Json& j, const Toleranced& tol = {});

Json family_to_json(const SpectralFamilyd& f);

std::string read_text(const std::filesystem::path& path);
Json parse_text(std::string_view text, const std::string& source);

ElementDocument parse_element(const std::filesystem::path& path, const Toleranced& tol = {});
void emit_element(const DirectSumElement& x, Cone cone, const std::filesystem::path& path);
DirectSumIso parse_iso(const std::filesystem::path& path, const Toleranced& tol = {});
void emit_iso(const DirectSumIso& phi, const std::filesystem::path& path);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

}  // namespace speclat::io
