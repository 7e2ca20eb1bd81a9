#include "speclat/cone.hpp"

#include <stdexcept>

#include "speclat/block_profile.hpp"

namespace speclat {

std::string_view to_string(Cone c) {
  switch (c) {
    case Cone::self_adjoint: return "sa";
    case Cone::positive: return "pos";
    case Cone::effect: return "eff";
  }
  return "?";
}

Cone parse_cone(std::string_view s) {
  if (s == "sa") return Cone::self_adjoint;
  if (s == "pos") return Cone::positive;
  if (s == "eff") return Cone::effect;
  throw std::invalid_argument("unknown cone '" + std::string(s) + "' (expected sa, pos or eff)");
}

BlockProfile::BlockProfile(std::vector<Eigen::Index> d) : dims(std::move(d)) {
  if (dims.empty()) throw std::invalid_argument("block profile is empty");
  for (auto m : dims)
    if (m <= 0) throw std::invalid_argument("block dimensions must be positive");
}

Eigen::Index BlockProfile::total() const {
  Eigen::Index n = 0;
  for (auto m : dims) n += m;
  return n;
}

Eigen::Index BlockProfile::offset(std::size_t j) const {
  Eigen::Index o = 0;
  for (std::size_t i = 0; i < j; ++i) o += dims[i];
  return o;
}

bool BlockProfile::has_two_dimensional_block() const {
  for (auto m : dims)
    if (m == 2) return true;
  return false;
}

}  // namespace speclat
