#include "spdc/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, const std::string& key) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

template <typename Int>
Int parse_integer(std::string_view text, const std::string& key) {
  text = trim(text);
  Int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, std::string_view origin) {
  KeyValueConfig config;
  std::string section;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']') {
        throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": unterminated section header");
      }
      section = std::string(trim(body.substr(1, body.size() - 2)));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(body.substr(0, eq));
    if (key.empty()) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": empty key");
    }
    auto full_key = section.empty() ? std::string(key) : section + "." + std::string(key);
    config.entries_[std::move(full_key)] = std::string(trim(body.substr(eq + 1)));
  }
  return config;
}

KeyValueConfig KeyValueConfig::parse_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in, "<string>");
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse(in, path.string());
}

void KeyValueConfig::set(const std::string& key, std::string value) { entries_[key] = std::move(value); }

void KeyValueConfig::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || trim(assignment.substr(0, eq)).empty()) {
    throw ConfigError("expected section.key=value, got '" + std::string(assignment) + "'");
  }
  set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))));
}

void KeyValueConfig::merge(const KeyValueConfig& other) {
  for (const auto& [k, v] : other.entries_) entries_[k] = v;
}

bool KeyValueConfig::contains(const std::string& key) const { return entries_.contains(key); }

std::optional<std::string> KeyValueConfig::find(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key) const {
  auto value = find(key);
  if (!value) throw ConfigError("missing config key '" + key + "'");
  return *value;
}

std::string KeyValueConfig::get_string(const std::string& key, std::string fallback) const {
  return find(key).value_or(std::move(fallback));
}

double KeyValueConfig::get_double(const std::string& key) const { return parse_double(get_string(key), key); }

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto value = find(key);
  return value ? parse_double(*value, key) : fallback;
}

std::int64_t KeyValueConfig::get_int(const std::string& key) const {
  return parse_integer<std::int64_t>(get_string(key), key);
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) const {
  const auto value = find(key);
  return value ? parse_integer<std::int64_t>(*value, key) : fallback;
}

std::uint64_t KeyValueConfig::get_uint64(const std::string& key, std::uint64_t fallback) const {
  const auto value = find(key);
  return value ? parse_integer<std::uint64_t>(*value, key) : fallback;
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const {
  const auto text = get_string(key);
  std::vector<double> values;
  std::string_view rest = text;
  while (!trim(rest).empty()) {
    const auto comma = rest.find(',');
    values.push_back(parse_double(rest.substr(0, comma), key));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return values;
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key, std::vector<double> fallback) const {
  return contains(key) ? get_doubles(key) : std::move(fallback);
}

std::map<std::string, std::string> KeyValueConfig::section(std::string_view name) const {
  std::map<std::string, std::string> out;
  const std::string prefix = std::string(name) + ".";
  for (auto it = entries_.lower_bound(prefix); it != entries_.end() && it->first.starts_with(prefix); ++it) {
    out.emplace(it->first.substr(prefix.size()), it->second);
  }
  return out;
}

std::string KeyValueConfig::to_string() const {
  std::ostringstream out;
  std::string current;
  bool first_section = true;
  // Bare keys first, then sections in sorted order.
  for (const auto& [key, value] : entries_) {
    if (key.find('.') == std::string::npos) out << key << " = " << value << '\n';
  }
  for (const auto& [key, value] : entries_) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) continue;
    const auto sec = key.substr(0, dot);
    if (first_section || sec != current) {
      out << (first_section ? "" : "\n") << '[' << sec << "]\n";
      current = sec;
      first_section = false;
    }
    out << key.substr(dot + 1) << " = " << value << '\n';
  }
  return out.str();
}

std::string format_double(double value) {
  char buf[64];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

}  // namespace spdc
