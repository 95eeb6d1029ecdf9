#include "eisl/json_schema.hpp"

#include <algorithm>

namespace eisl::cli {

namespace {

using nlohmann::json;

bool has_type(const json& v, const std::string& type) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    if (type == "integer") return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>())));
    if (type == "number") return v.is_number();
    return false;
}

void check(const json& schema, const json& v, const std::string& path, std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string())
            ok = has_type(v, t.get<std::string>());
        else
            for (const auto& alt : t) ok = ok || has_type(v, alt.get<std::string>());
        if (!ok) {
            errors.push_back(path + ": wrong type, expected " + t.dump());
            return;
        }
    }
    if (schema.contains("enum")) {
        const auto& e = schema["enum"];
        if (std::find(e.begin(), e.end(), v) == e.end()) errors.push_back(path + ": not one of " + e.dump());
    }
    if (v.is_number()) {
        if (schema.contains("minimum") && v.get<double>() < schema["minimum"].get<double>())
            errors.push_back(path + ": below minimum");
        if (schema.contains("maximum") && v.get<double>() > schema["maximum"].get<double>())
            errors.push_back(path + ": above maximum");
    }
    if (v.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!v.contains(key.get<std::string>())) errors.push_back(path + ": missing " + key.get<std::string>());
        const json props = schema.value("properties", json::object());
        const bool closed = schema.contains("additionalProperties") && schema["additionalProperties"].is_boolean() &&
                            !schema["additionalProperties"].get<bool>();
        for (const auto& [key, child] : v.items()) {
            if (props.contains(key))
                check(props[key], child, path + "/" + key, errors);
            else if (closed)
                errors.push_back(path + ": unexpected property " + key);
        }
    }
    if (v.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) check(schema["items"], v[i], path + "/" + std::to_string(i), errors);
}

}  // namespace

std::vector<std::string> validate_schema(const nlohmann::json& schema, const nlohmann::json& doc) {
    std::vector<std::string> errors;
    check(schema, doc, "", errors);
    return errors;
}

}  // namespace eisl::cli
