#pragma once

#include <string>

#include "json.hpp"

namespace weylforge::detail {

/// Compact JSON with every floating value written to 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace weylforge::detail
