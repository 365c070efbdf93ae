#pragma once

// Reader for the TOML-style key/value text used by study configs and
// material override files. Supported subset: `[section.name]` headers,
// `key = value` lines, `#` comments, and values that are numbers, quoted
// strings or true/false. Arrays, tables-in-values and multi-line strings are
// rejected.

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tegen/error.hpp"

namespace tegen::kv {

using Value = std::variant<double, std::string, bool>;

struct Entry {
  std::string key;
  Value value;
  int line = 0;
};

struct Section {
  std::string name;  // empty for keys before the first header
  int line = 0;
  std::vector<Entry> entries;
};

struct Document {
  std::vector<Section> sections;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

inline bool is_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!is_name_char(c)) return false;
  }
  return s.front() != '.' && s.back() != '.';
}

// Drops a trailing comment, honouring quoted strings.
inline std::string_view strip_comment(std::string_view s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && quoted) {
      ++i;
    } else if (s[i] == '"') {
      quoted = !quoted;
    } else if (s[i] == '#' && !quoted) {
      return s.substr(0, i);
    }
  }
  return s;
}

inline Value parse_value(std::string_view raw, int line) {
  if (raw.empty()) throw ParseError(line, "missing value");
  if (raw.front() == '"') {
    std::string out;
    std::size_t i = 1;
    for (; i < raw.size() && raw[i] != '"'; ++i) {
      if (raw[i] == '\\') {
        if (++i == raw.size()) break;
        if (raw[i] != '"' && raw[i] != '\\') throw ParseError(line, "unsupported escape sequence");
      }
      out.push_back(raw[i]);
    }
    if (i >= raw.size()) throw ParseError(line, "unterminated string");
    if (i + 1 != raw.size()) throw ParseError(line, "trailing characters after string");
    return out;
  }
  if (raw == "true") return true;
  if (raw == "false") return false;
  std::string_view num = raw;
  if (num.front() == '+') num.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
  if (ec != std::errc{} || ptr != num.data() + num.size()) {
    throw ParseError(line, "invalid value '" + std::string(raw) + "'");
  }
  return v;
}

}  // namespace detail

inline Document parse(std::istream& in) {
  Document doc;
  doc.sections.push_back(Section{"", 0, {}});
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    auto s = detail::trim(detail::strip_comment(text));
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(line, "malformed section header");
      auto name = detail::trim(s.substr(1, s.size() - 2));
      if (!detail::is_name(name)) throw ParseError(line, "invalid section name '" + std::string(name) + "'");
      for (const auto& sec : doc.sections) {
        if (sec.name == name) throw ParseError(line, "duplicate section [" + std::string(name) + "]");
      }
      doc.sections.push_back(Section{std::string(name), line, {}});
      continue;
    }

    auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError(line, "expected 'key = value'");
    auto key = detail::trim(s.substr(0, eq));
    if (!detail::is_name(key)) throw ParseError(line, "invalid key '" + std::string(key) + "'");
    auto& sec = doc.sections.back();
    for (const auto& e : sec.entries) {
      if (e.key == key) throw ParseError(line, "duplicate key '" + std::string(key) + "'");
    }
    sec.entries.push_back(Entry{std::string(key), detail::parse_value(detail::trim(s.substr(eq + 1)), line), line});
  }
  return doc;
}

inline Document parse_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

inline Document parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return parse(in);
}

inline double as_number(const Entry& e) {
  if (const auto* v = std::get_if<double>(&e.value)) return *v;
  throw ParseError(e.line, "key '" + e.key + "' expects a number");
}

inline const std::string& as_string(const Entry& e) {
  if (const auto* v = std::get_if<std::string>(&e.value)) return *v;
  throw ParseError(e.line, "key '" + e.key + "' expects a quoted string");
}

inline bool as_bool(const Entry& e) {
  if (const auto* v = std::get_if<bool>(&e.value)) return *v;
  throw ParseError(e.line, "key '" + e.key + "' expects true or false");
}

}  // namespace tegen::kv
