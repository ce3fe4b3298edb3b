#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "spdc/config.hpp"

namespace spdc {

/// Ordered key/value annotations written as '# key: value' CSV header lines
/// and as the "metadata" object of the JSON sidecar.
class Metadata {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, std::uint64_t value);
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

struct Column {
  std::string name;
  std::vector<double> values;
};

/// Metadata lines, one header row, then one row per sample. Numbers use the
/// shortest round-trip form so reruns give byte-identical files.
void write_csv(std::ostream& out, const Metadata& metadata, const std::vector<Column>& columns);
void write_csv(const std::filesystem::path& path, const Metadata& metadata, const std::vector<Column>& columns);

/// JSON sidecar: {"command", "config": {section: {key: value}}, "metadata", "outputs"}.
void write_sidecar(const std::filesystem::path& path, const std::string& command, const KeyValueConfig& config,
                   const Metadata& metadata, const std::vector<std::string>& outputs);

}  // namespace spdc
