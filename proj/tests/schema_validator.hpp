#pragma once

// Validator for the JSON Schema subset used by schema/report.schema.json:
// type, const, enum, properties, required, additionalProperties (boolean),
// items, minItems, minimum, minLength, anyOf and local $ref.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace krull::test {

class SchemaValidator {
 public:
  explicit SchemaValidator(nlohmann::json schema) : root_(std::move(schema)) {}

  static SchemaValidator from_file(const std::string& path) {
    std::ifstream in(path);
    return SchemaValidator(nlohmann::json::parse(in));
  }

  /// Empty when `doc` is valid.
  std::vector<std::string> errors(const nlohmann::json& doc) const {
    std::vector<std::string> out;
    check(root_, doc, "$", out);
    return out;
  }

 private:
  static bool has_type(const nlohmann::json& v, const std::string& type) {
    if (type == "null") return v.is_null();
    if (type == "boolean") return v.is_boolean();
    if (type == "integer") return v.is_number_integer();
    if (type == "number") return v.is_number();
    if (type == "string") return v.is_string();
    if (type == "array") return v.is_array();
    if (type == "object") return v.is_object();
    return false;
  }

  const nlohmann::json& resolve(const std::string& ref) const {
    const std::string prefix = "#/$defs/";
    return root_.at("$defs").at(ref.substr(prefix.size()));
  }

  void check(const nlohmann::json& s, const nlohmann::json& v, const std::string& path,
             std::vector<std::string>& out) const {
    if (s.contains("$ref")) return check(resolve(s["$ref"].get<std::string>()), v, path, out);
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
      } else {
        ok = has_type(v, s["type"].get<std::string>());
      }
      if (!ok) {
        out.push_back(path + ": expected type " + s["type"].dump() + ", got " + v.dump());
        return;
      }
    }
    if (s.contains("const") && s["const"] != v) out.push_back(path + ": expected " + s["const"].dump());
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) out.push_back(path + ": " + v.dump() + " not in " + s["enum"].dump());
    }
    if (s.contains("anyOf")) {
      bool any = false;
      for (const auto& alt : s["anyOf"]) {
        std::vector<std::string> sub;
        check(alt, v, path, sub);
        any = any || sub.empty();
      }
      if (!any) out.push_back(path + ": matches no alternative");
    }
    if (v.is_number() && s.contains("minimum") && v.get<double>() < s["minimum"].get<double>()) {
      out.push_back(path + ": below minimum");
    }
    if (v.is_string() && s.contains("minLength") && v.get<std::string>().size() < s["minLength"].get<std::size_t>()) {
      out.push_back(path + ": too short");
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) out.push_back(path + ": too few items");
      if (s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) check(s["items"], v[i], path + "[" + std::to_string(i) + "]", out);
      }
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& r : s["required"]) {
          if (!v.contains(r.get<std::string>())) out.push_back(path + ": missing " + r.get<std::string>());
        }
      }
      const auto props = s.value("properties", nlohmann::json::object());
      for (const auto& [k, inner] : v.items()) {
        if (props.contains(k)) {
          check(props[k], inner, path + "." + k, out);
        } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
          out.push_back(path + ": unexpected property " + k);
        }
      }
    }
  }

  nlohmann::json root_;
};

}  // namespace krull::test
