// Copyright 2026 The twophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "twophase/error.hpp"

namespace twophase::detail {

using json = nlohmann::json;

inline SourceSpan span_at_offset(std::string_view text, std::size_t offset,
                                 const std::string& file) {
  SourceSpan span{file, 1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++span.line;
      span.column = 1;
    } else {
      ++span.column;
    }
  }
  return span;
}

inline json parse_json(std::string_view text, const std::string& file) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    std::string msg = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
    if (auto pos = msg.find("] "); pos != std::string::npos) {
      msg = msg.substr(pos + 2);
    }
    throw ParseError(span_at_offset(text, offset, file), msg);
  }
}

// Field access with a schema-style error message.
inline const json& require(const json& obj, const char* key,
                           const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::Parse, where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

inline std::string require_string(const json& obj, const char* key,
                                  const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_string()) {
    throw Error(ErrorCode::Parse,
                where + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

inline double get_number(const json& obj, const char* key, double fallback,
                         const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw Error(ErrorCode::Parse,
                where + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

}  // namespace twophase::detail
