#pragma once

// A small JSON Schema subset: type (string or list), required, properties,
// additionalProperties (boolean), items, enum, minimum, maximum.

#include <string>
#include <vector>

#include <json.hpp>

namespace eisl::cli {

/// Returns the list of violations, empty when `doc` conforms to `schema`.
std::vector<std::string> validate_schema(const nlohmann::json& schema, const nlohmann::json& doc);

}  // namespace eisl::cli
