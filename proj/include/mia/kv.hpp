// Copyright 2026 The mia-llr Authors
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

#ifndef MIA_KV_HPP
#define MIA_KV_HPP

#include <charconv>
#include <istream>
#include <map>
#include <string>
#include <string_view>

#include "mia/errors.hpp"

namespace mia {

/* Flat `key = value` text files ('#' starts a comment, blank lines ignored).
   Used by synth configs and prior files. */
inline std::map<std::string, std::string> parse_kv(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
      s.remove_prefix(1);
    }
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
      s.remove_suffix(1);
    }
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    std::size_t hash = sv.find('#');
    if (hash != std::string_view::npos) sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    std::size_t eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("expected 'key = value'", lineno);
    }
    std::string key(trim(sv.substr(0, eq)));
    std::string val(trim(sv.substr(eq + 1)));
    if (key.empty()) throw ParseError("empty key", lineno);
    if (!out.emplace(key, val).second) {
      throw ParseError("duplicate key '" + key + "'", lineno);
    }
  }
  return out;
}

inline double kv_double(const std::map<std::string, std::string>& kv,
                        const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("missing key '" + key + "'");
  const std::string& s = it->second;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("bad numeric value for '" + key + "': '" + s + "'");
  }
  return v;
}

inline double kv_double_or(const std::map<std::string, std::string>& kv,
                           const std::string& key, double fallback) {
  return kv.count(key) ? kv_double(kv, key) : fallback;
}

}  // namespace mia

#endif  // MIA_KV_HPP
