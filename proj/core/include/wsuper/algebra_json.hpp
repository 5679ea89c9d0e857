#pragma once

#include "wsuper/algebra.hpp"
#include "wsuper/rational.hpp"

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

namespace wsuper {

// Structured-text (JSON) loaders for algebra, nilpotent and character
// specifications. Rationals are strings "p/q".
LieSuperalgebra<Rat> algebra_from_json(const nlohmann::json& spec);

// nilpotent/character element: explicit coefficients or a gl partition tag
Vec<Rat> element_from_json(const LieSuperalgebra<Rat>& g, const nlohmann::json& spec);

} // namespace wsuper
