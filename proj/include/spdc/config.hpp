#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spdc {

/// Flat key-value store read from an INI-style text file.
///
/// Grammar, one item per line:
///
///     # comment            (also ';')
///     [section]
///     key = value
///
/// Keys are addressed as "section.key"; keys before the first section header
/// live in the empty section and are addressed by their bare name. Values are
/// raw strings; typed accessors parse on demand and throw ConfigError naming
/// the key on malformed input. Lists are comma-separated.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::istream& in, std::string_view origin = "<stream>");
  static KeyValueConfig parse_string(std::string_view text);
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(const std::string& key, std::string value);
  /// Parses "section.key=value".
  void set_assignment(std::string_view assignment);
  void merge(const KeyValueConfig& other);

  bool contains(const std::string& key) const;
  std::optional<std::string> find(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, std::string fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;

  /// Keys under "section." with the prefix stripped.
  std::map<std::string, std::string> section(std::string_view name) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// Canonical INI rendering (sections and keys sorted); parse() of the output
  /// reproduces the same entries.
  std::string to_string() const;

 private:
  std::map<std::string, std::string> entries_;
};

/// Shortest round-trip decimal form of a double ("%.17g" trimmed).
std::string format_double(double value);

}  // namespace spdc
