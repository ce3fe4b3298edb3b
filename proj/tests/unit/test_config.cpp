#include <doctest.h>

#include <sstream>

#include "spdc/config.hpp"
#include "spdc/errors.hpp"

using spdc::KeyValueConfig;

TEST_SUITE("config") {
  TEST_CASE("sections, comments and typed values") {
    const auto c = KeyValueConfig::parse_string(
        "top = 1\n# comment\n; other comment\n[pump]\nwavelength_nm = 775  \n power_mw=100\n[list]\nv = 1, 2.5 ,3\n");
    CHECK(c.get_int("top") == 1);
    CHECK(c.get_double("pump.wavelength_nm") == 775.0);
    CHECK(c.get_double("pump.power_mw") == 100.0);
    CHECK(c.get_doubles("list.v") == std::vector<double>{1.0, 2.5, 3.0});
    CHECK(c.get_double("pump.missing", 4.0) == 4.0);
    CHECK(c.section("pump").size() == 2);
  }

  TEST_CASE("malformed input names the key or line") {
    const auto c = KeyValueConfig::parse_string("[a]\nx = abc\n");
    CHECK_THROWS_AS(c.get_double("a.x"), spdc::ConfigError);
    CHECK_THROWS_AS(c.get_string("a.y"), spdc::ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse_string("[a\n"), spdc::ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::parse_string("[a]\nno equals sign\n"), spdc::ConfigError);
    try {
      (void)c.get_int("a.x");
      FAIL("expected ConfigError");
    } catch (const spdc::ConfigError& e) {
      CHECK(std::string(e.what()).find("a.x") != std::string::npos);
    }
  }

  TEST_CASE("assignments, merge and canonical round trip") {
    auto c = KeyValueConfig::parse_string("[b]\nk = 1\n[a]\nz = 2\n");
    c.set_assignment("a.y=3");
    c.merge(KeyValueConfig::parse_string("[b]\nk = 5\n"));
    CHECK(c.get_int("b.k") == 5);
    CHECK(c.get_int("a.y") == 3);
    CHECK_THROWS_AS(c.set_assignment("novalue"), spdc::ConfigError);
    const auto text = c.to_string();
    const auto again = KeyValueConfig::parse_string(text);
    CHECK(again.entries() == c.entries());
    CHECK(again.to_string() == text);
  }

  TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, 9.515e-6, 2e7, -1.25e-300, 0.0}) {
      CHECK(std::stod(spdc::format_double(v)) == v);
    }
    CHECK(spdc::format_double(0.1) == "0.1");
  }
}
