#include "chainflux/schema.hpp"

namespace chainflux::schema {

namespace {

bool matches_type(const nlohmann::json& doc, const std::string& type) {
  if (type == "object") return doc.is_object();
  if (type == "array") return doc.is_array();
  if (type == "string") return doc.is_string();
  if (type == "boolean") return doc.is_boolean();
  if (type == "null") return doc.is_null();
  if (type == "number") return doc.is_number();
  if (type == "integer")
    return doc.is_number_integer() || doc.is_number_unsigned();
  return false;
}

void check(const nlohmann::json& schema, const nlohmann::json& doc,
           const std::string& path, std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = matches_type(doc, t.get<std::string>());
    } else if (t.is_array()) {
      for (const auto& alt : t)
        if (matches_type(doc, alt.get<std::string>())) {
          ok = true;
          break;
        }
    }
    if (!ok) {
      errors.push_back(path + ": expected type " + t.dump() + ", got " +
                       std::string(doc.type_name()));
      return;
    }
  }

  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& alt : schema["enum"])
      if (alt == doc) {
        ok = true;
        break;
      }
    if (!ok)
      errors.push_back(path + ": value " + doc.dump() + " not in " +
                       schema["enum"].dump());
  }

  if (doc.is_number()) {
    const double v = doc.get<double>();
    if (schema.contains("minimum") && v < schema["minimum"].get<double>())
      errors.push_back(path + ": " + doc.dump() + " below minimum " +
                       schema["minimum"].dump());
    if (schema.contains("exclusiveMinimum") &&
        v <= schema["exclusiveMinimum"].get<double>())
      errors.push_back(path + ": " + doc.dump() + " must exceed " +
                       schema["exclusiveMinimum"].dump());
  }

  if (doc.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!doc.contains(key.get<std::string>()))
          errors.push_back(path + ": missing required field \"" +
                           key.get<std::string>() + "\"");
    if (schema.contains("properties"))
      for (const auto& [key, sub] : schema["properties"].items())
        if (doc.contains(key)) check(sub, doc.at(key), path + "." + key, errors);
  }

  if (doc.is_array()) {
    if (schema.contains("minItems") &&
        doc.size() < schema["minItems"].get<std::size_t>())
      errors.push_back(path + ": fewer than " + schema["minItems"].dump() +
                       " items");
    if (schema.contains("maxItems") &&
        doc.size() > schema["maxItems"].get<std::size_t>())
      errors.push_back(path + ": more than " + schema["maxItems"].dump() +
                       " items");
    if (schema.contains("items")) {
      std::size_t i = 0;
      for (const auto& item : doc)
        check(schema["items"], item, path + "[" + std::to_string(i++) + "]",
              errors);
    }
  }
}

}  // namespace

std::vector<std::string> validate(const nlohmann::json& schema,
                                  const nlohmann::json& doc,
                                  const std::string& path) {
  std::vector<std::string> errors;
  check(schema, doc, path, errors);
  return errors;
}

}  // namespace chainflux::schema
