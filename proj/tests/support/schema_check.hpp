#pragma once

// Minimal JSON Schema checker covering the subset used by the shipped schema:
// type (including ["number","null"] unions), enum, properties, required,
// additionalProperties:false, items, minItems, maxItems, oneOf and local
// $ref into #/definitions. Reports every violation with its JSON path.

#include <string>
#include <vector>

#include <json.hpp>

namespace schema_check {

using nlohmann::json;

inline bool type_matches(const std::string& name, const json& value) {
  if (name == "object") return value.is_object();
  if (name == "array") return value.is_array();
  if (name == "string") return value.is_string();
  if (name == "number") return value.is_number();
  if (name == "integer") return value.is_number_integer();
  if (name == "boolean") return value.is_boolean();
  if (name == "null") return value.is_null();
  return false;
}

inline const json& resolve_ref(const json& root, const std::string& ref) {
  // Only local "#/a/b" pointers occur in the shipped schema.
  const json* node = &root;
  std::size_t begin = 2;  // skip "#/"
  while (begin < ref.size()) {
    std::size_t end = ref.find('/', begin);
    if (end == std::string::npos) end = ref.size();
    node = &node->at(ref.substr(begin, end - begin));
    begin = end + 1;
  }
  return *node;
}

inline void check_node(const json& root, const json& schema, const json& value,
                       const std::string& path, std::vector<std::string>& errors);

inline bool branch_ok(const json& root, const json& schema, const json& value) {
  std::vector<std::string> scratch;
  check_node(root, schema, value, "", scratch);
  return scratch.empty();
}

inline void check_node(const json& root, const json& schema, const json& value,
                       const std::string& path, std::vector<std::string>& errors) {
  if (schema.contains("$ref")) {
    check_node(root, resolve_ref(root, schema["$ref"].get<std::string>()), value, path, errors);
    return;
  }

  if (schema.contains("oneOf")) {
    int matches = 0;
    for (const json& branch : schema["oneOf"]) {
      if (branch_ok(root, branch, value)) ++matches;
    }
    if (matches != 1) {
      errors.push_back(path + ": matched " + std::to_string(matches) + " oneOf branches, want 1");
    }
    return;
  }

  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_array()) {
      for (const json& name : t) ok = ok || type_matches(name.get<std::string>(), value);
    } else {
      ok = type_matches(t.get<std::string>(), value);
    }
    if (!ok) {
      errors.push_back(path + ": type mismatch, got " + std::string(value.type_name()));
      return;
    }
  }

  if (schema.contains("enum")) {
    bool ok = false;
    for (const json& option : schema["enum"]) ok = ok || option == value;
    if (!ok) errors.push_back(path + ": value not in enum");
  }

  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const json& name : schema["required"]) {
        if (!value.contains(name.get<std::string>())) {
          errors.push_back(path + ": missing required key " + name.get<std::string>());
        }
      }
    }
    const json props = schema.value("properties", json::object());
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (props.contains(it.key())) {
        check_node(root, props[it.key()], it.value(), path + "/" + it.key(), errors);
      } else if (schema.value("additionalProperties", json(true)) == json(false)) {
        errors.push_back(path + ": unexpected key " + it.key());
      }
    }
  }

  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>()) {
      errors.push_back(path + ": fewer than minItems elements");
    }
    if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>()) {
      errors.push_back(path + ": more than maxItems elements");
    }
    if (schema.contains("items")) {
      for (std::size_t k = 0; k < value.size(); ++k) {
        check_node(root, schema["items"], value[k], path + "/" + std::to_string(k), errors);
      }
    }
  }
}

/// Validates a document against the schema; returns the violations (empty
/// means the document conforms).
inline std::vector<std::string> validate(const json& schema, const json& document) {
  std::vector<std::string> errors;
  check_node(schema, schema, document, "$", errors);
  return errors;
}

}  // namespace schema_check
