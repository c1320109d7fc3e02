#pragma once

#include "poisson/rational.hpp"
#include "poisson/structure.hpp"

#include <json.hpp>

namespace poisson {

using json = nlohmann::json;

// {"dim": n, "dot": [[i,j,k,"q"], ...], "bracket": [[i,j,k,"q"], ...]}
json pair_to_json(const BilinearPair<Rational>& p);
BilinearPair<Rational> pair_from_json(const json& j);

// Accepts a JSON string in the scalar grammar or a JSON integer.
Rational rational_from_json(const json& v);

}  // namespace poisson
