#pragma once

#include <string>
#include <string_view>

namespace speclat {

/// The spectral sublattices handled here: all Hermitian elements, the
/// positive cone, and the effects 0 <= x <= 1.
enum class Cone { self_adjoint, positive, effect };

std::string_view to_string(Cone c);
/// Accepts "sa", "pos", "eff"; throws std::invalid_argument otherwise.
Cone parse_cone(std::string_view s);

}  // namespace speclat
