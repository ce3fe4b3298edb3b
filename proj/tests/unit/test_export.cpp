#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spdc/errors.hpp"
#include "spdc/export.hpp"

using namespace spdc;

TEST_SUITE("export") {
  TEST_CASE("CSV layout") {
    Metadata meta;
    meta.add("command", std::string("spectrum"));
    meta.add("l0_m", 9.4873e-06);
    meta.add("seed", std::uint64_t{18446744073709551615ull});
    std::ostringstream out;
    write_csv(out, meta, {{"a", {1.0, 0.1}}, {"b", {-2.5e-300, 3.0}}});
    CHECK(out.str() ==
          "# command: spectrum\n"
          "# l0_m: 9.4873e-06\n"
          "# seed: 18446744073709551615\n"
          "a,b\n"
          "1,-2.5e-300\n"
          "0.1,3\n");
    std::ostringstream bad;
    CHECK_THROWS_AS(write_csv(bad, meta, {{"a", {1.0}}, {"b", {}}}), ArgumentError);
  }

  TEST_CASE("values survive a text round trip") {
    const std::vector<double> values{0.1, 1.0 / 3.0, 2.718281828459045e-17, 6.02214076e23};
    std::ostringstream out;
    write_csv(out, {}, {{"x", values}});
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    for (double v : values) {
      std::getline(in, line);
      CHECK(std::stod(line) == v);
    }
  }

  TEST_CASE("JSON sidecar") {
    const auto dir = std::filesystem::temp_directory_path() / "spdc_export_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "run.json";
    auto cfg = KeyValueConfig::parse_string("[pump]\nwavelength_nm = 775\n[grid]\nsamples = 16384\n");
    Metadata meta;
    meta.add("pair_rate", 2.08e6);
    write_sidecar(path, "spectrum", cfg, meta, {"spectrum_data.csv"});
    std::ifstream in(path);
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["command"] == "spectrum");
    CHECK(doc["config"]["pump"]["wavelength_nm"] == "775");
    CHECK(doc["config"]["grid"]["samples"] == "16384");
    CHECK(doc["metadata"]["pair_rate"] == "2.08e+06");
    CHECK(doc["outputs"][0] == "spectrum_data.csv");
    std::filesystem::remove_all(dir);
  }
}
