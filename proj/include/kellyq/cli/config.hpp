// Copyright 2026 The kellyq Authors
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

// Line-oriented experiment configs:
//
//   # comment
//   [section]
//   key = value
//   row = 0.5 0 0 0.5      (keys may repeat; order is kept)
//
// Every value remembers the file line it came from so errors can name it.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kellyq/error.hpp"
#include "kellyq/qmath.hpp"

namespace kellyq::cli {

struct ConfigValue {
  std::string text;
  std::size_t line = 0;  // 0 for command-line overrides
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::string where(const std::string& path, std::size_t line) {
  return line ? path + " (line " + std::to_string(line) + ")" : path + " (override)";
}

class Config {
 public:
  static Config parse(std::istream& in, const std::string& source = "<config>") {
    Config cfg;
    cfg.source_ = source;
    std::string raw;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
      ++lineno;
      const auto hash = raw.find('#');
      const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']' || line.size() < 3) {
          throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": malformed section header");
        }
        section = trim(std::string_view(line).substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected key = value");
      }
      if (section.empty()) {
        throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": key outside of any section");
      }
      const std::string key = trim(std::string_view(line).substr(0, eq));
      if (key.empty()) throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": empty key");
      cfg.entries_[section + "." + key].push_back({trim(std::string_view(line).substr(eq + 1)), lineno});
    }
    return cfg;
  }

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
    return parse(in, path);
  }

  /// `section.key=value`; replaces every earlier value of that key.
  void apply_override(std::string_view assignment) {
    const auto eq = assignment.find('=');
    const std::string path = trim(assignment.substr(0, std::min(eq, assignment.size())));
    if (eq == std::string_view::npos || path.find('.') == std::string::npos || path.front() == '.' ||
        path.back() == '.') {
      throw Error(ErrorCode::ConfigError, "override '" + std::string(assignment) + "' is not section.key=value");
    }
    entries_[path] = {{trim(assignment.substr(eq + 1)), 0}};
  }

  bool has(const std::string& path) const { return entries_.count(path) > 0; }

  const std::vector<ConfigValue>& all(const std::string& path) const {
    static const std::vector<ConfigValue> empty;
    const auto it = entries_.find(path);
    return it == entries_.end() ? empty : it->second;
  }

  /// Last value wins for scalar keys.
  const ConfigValue* find(const std::string& path) const {
    const auto& v = all(path);
    return v.empty() ? nullptr : &v.back();
  }

  const ConfigValue& require(const std::string& path) const {
    const ConfigValue* v = find(path);
    if (!v) throw Error(ErrorCode::ConfigError, path + ": required key is missing");
    return *v;
  }

  std::string get_string(const std::string& path, const std::string& fallback) const {
    const ConfigValue* v = find(path);
    return v ? v->text : fallback;
  }

  double get_double(const std::string& path, double fallback) const {
    const ConfigValue* v = find(path);
    if (!v) return fallback;
    double x = 0.0;
    if (!kellyq::detail::parse_double(v->text, x)) {
      throw Error(ErrorCode::ConfigError, where(path, v->line) + ": '" + v->text + "' is not a number");
    }
    return x;
  }

  std::uint64_t get_uint(const std::string& path, std::uint64_t fallback) const {
    const ConfigValue* v = find(path);
    if (!v) return fallback;
    std::uint64_t x = 0;
    const char* b = v->text.data();
    const char* e = b + v->text.size();
    int base = 10;
    if (v->text.size() > 2 && v->text[0] == '0' && (v->text[1] == 'x' || v->text[1] == 'X')) {
      b += 2;
      base = 16;
    }
    const auto [ptr, ec] = std::from_chars(b, e, x, base);
    if (ec != std::errc() || ptr != e || b == e) {
      throw Error(ErrorCode::ConfigError, where(path, v->line) + ": '" + v->text + "' is not a non-negative integer");
    }
    return x;
  }

  std::vector<double> get_doubles(const std::string& path) const {
    const ConfigValue& v = require(path);
    return parse_doubles(path, v);
  }

  static std::vector<double> parse_doubles(const std::string& path, const ConfigValue& v) {
    std::vector<double> out;
    std::istringstream ss(v.text);
    std::string tok;
    while (ss >> tok) {
      if (tok.back() == ',') tok.pop_back();
      double x = 0.0;
      if (tok.empty() || !kellyq::detail::parse_double(tok, x)) {
        throw Error(ErrorCode::ConfigError, where(path, v.line) + ": '" + tok + "' is not a number");
      }
      out.push_back(x);
    }
    if (out.empty()) throw Error(ErrorCode::ConfigError, where(path, v.line) + ": empty list");
    return out;
  }

  /// Matrix from repeated row keys; a malformed row names its file line.
  ComplexMatrix get_matrix(const std::string& path) const {
    const auto& rows = all(path);
    if (rows.empty()) throw Error(ErrorCode::ConfigError, path + ": required key is missing");
    std::vector<Complex> data;
    std::size_t cols = 0;
    for (const ConfigValue& r : rows) {
      std::vector<Complex> row;
      try {
        row = parse_complex_row(r.text);
      } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, where(path, r.line) + ": " + e.detail());
      }
      if (cols == 0) cols = row.size();
      if (row.size() != cols || cols == 0) {
        throw Error(ErrorCode::ConfigError, where(path, r.line) + ": row has " + std::to_string(row.size()) +
                                                " entries, expected " + std::to_string(cols));
      }
      data.insert(data.end(), row.begin(), row.end());
    }
    return ComplexMatrix(rows.size(), cols, std::move(data));
  }

  const std::string& source() const { return source_; }

 private:
  std::map<std::string, std::vector<ConfigValue>> entries_;
  std::string source_;
};

}  // namespace kellyq::cli
