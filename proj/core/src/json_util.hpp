#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "trustq/errors.hpp"

namespace trustq::detail {

inline nlohmann::json parse_json(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

inline std::string join_path(const std::string& parent, const char* key) {
  return parent.empty() ? std::string(key) : parent + "." + key;
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                                     const std::string& parent) {
  if (!obj.is_object()) {
    throw FormatError((parent.empty() ? std::string("document") : parent) +
                      ": expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw FormatError(join_path(parent, key) + ": missing");
  }
  return *it;
}

inline double get_number(const nlohmann::json& obj, const char* key, const std::string& parent) {
  const auto& v = require(obj, key, parent);
  if (!v.is_number()) {
    throw FormatError(join_path(parent, key) + ": expected a number");
  }
  return v.get<double>();
}

inline std::string get_string(const nlohmann::json& obj, const char* key,
                              const std::string& parent) {
  const auto& v = require(obj, key, parent);
  if (!v.is_string()) {
    throw FormatError(join_path(parent, key) + ": expected a string");
  }
  return v.get<std::string>();
}

}  // namespace trustq::detail
