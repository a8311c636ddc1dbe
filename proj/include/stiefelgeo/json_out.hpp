#pragma once

#include <nlohmann/json.hpp>

#include <string>

namespace stiefelgeo {

/// Serializes like nlohmann::json::dump(2) but prints every floating-point
/// number with 17 significant digits; non-finite values become strings. Ends
/// with a newline.
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace stiefelgeo
