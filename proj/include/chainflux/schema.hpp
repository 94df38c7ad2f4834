#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace chainflux::schema {

// Structural validator for the subset of JSON Schema the published schemas
// use: type, required, properties, items, enum, minimum, exclusiveMinimum,
// minItems, maxItems. Returns one message per violation, empty when valid.
std::vector<std::string> validate(const nlohmann::json& schema,
                                  const nlohmann::json& doc,
                                  const std::string& path = "$");

}  // namespace chainflux::schema
