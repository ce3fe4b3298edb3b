#include "spdc/export.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "spdc/errors.hpp"

namespace spdc {

void Metadata::add(const std::string& key, const std::string& value) { entries_.emplace_back(key, value); }
void Metadata::add(const std::string& key, double value) { entries_.emplace_back(key, format_double(value)); }
void Metadata::add(const std::string& key, std::uint64_t value) { entries_.emplace_back(key, std::to_string(value)); }

void write_csv(std::ostream& out, const Metadata& metadata, const std::vector<Column>& columns) {
  for (const auto& [key, value] : metadata.entries()) out << "# " << key << ": " << value << '\n';
  if (columns.empty()) return;
  const std::size_t rows = columns.front().values.size();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].values.size() != rows) throw ArgumentError("CSV column '" + columns[c].name + "' has wrong length");
    out << (c ? "," : "") << columns[c].name;
  }
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_double(columns[c].values[r]);
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Metadata& metadata, const std::vector<Column>& columns) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(out, metadata, columns);
  if (!out) throw Error("write failed for " + path.string());
}

void write_sidecar(const std::filesystem::path& path, const std::string& command, const KeyValueConfig& config,
                   const Metadata& metadata, const std::vector<std::string>& outputs) {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config.entries()) {
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
      cfg[key] = value;
    } else {
      cfg[key.substr(0, dot)][key.substr(dot + 1)] = value;
    }
  }
  doc["config"] = cfg;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata.entries()) meta[key] = value;
  doc["metadata"] = meta;
  doc["outputs"] = outputs;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace spdc
