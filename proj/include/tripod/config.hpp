#pragma once

#include <json.hpp>
#include <string>

#include "tripod/params.hpp"

namespace tripod {

/// Builds validated params from a JSON object. Missing keys keep their defaults; unknown keys,
/// wrong types and out-of-range values throw ValidationError. alpha may be a number (radians)
/// or a string such as "45deg".
LatticeParams params_from_json(const nlohmann::json& j);

LatticeParams load_config(const std::string& path);

}  // namespace tripod
