#pragma once

#include <set>
#include <string>

#include <json.hpp>

#include "clmodel/errors.hpp"
#include "clmodel/rational.hpp"

namespace clmodel::detail {

using nlohmann::json;

inline json parse_document(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                                const std::string& origin, const std::string& context) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ParseError(origin + ": unknown key \"" + it.key() + "\" in " + context);
    }
  }
}

inline const json& require_field(const json& obj, const std::string& key, const std::string& origin,
                                 const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(origin + ": missing field \"" + key + "\" in " + context);
  }
  return *it;
}

inline Rat to_rat(const json& v, const std::string& origin, const std::string& field) {
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_number_float()) return Rat::from_double(v.get<double>());
  throw ParseError(origin + ": field \"" + field + "\" must be a number");
}

inline double to_double(const json& v, const std::string& origin, const std::string& field) {
  if (!v.is_number()) throw ParseError(origin + ": field \"" + field + "\" must be a number");
  return v.get<double>();
}

inline long long to_int(const json& v, const std::string& origin, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError(origin + ": field \"" + field + "\" must be an integer");
  return v.get<long long>();
}

inline bool to_bool(const json& v, const std::string& origin, const std::string& field) {
  if (!v.is_boolean()) throw ParseError(origin + ": field \"" + field + "\" must be a boolean");
  return v.get<bool>();
}

inline std::string to_string(const json& v, const std::string& origin, const std::string& field) {
  if (!v.is_string()) throw ParseError(origin + ": field \"" + field + "\" must be a string");
  return v.get<std::string>();
}

// Emits a Rat as a JSON number (exact for the decimal-derived values used in
// machine documents).
inline json rat_to_json(const Rat& r) {
  if (r.is_integer()) return json(r.num());
  return json(r.to_double());
}

}  // namespace clmodel::detail
