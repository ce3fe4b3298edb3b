#include <doctest.h>

#include <cmath>

#include "spdc/constants.hpp"
#include "spdc/dispersion.hpp"
#include "spdc/errors.hpp"

using namespace spdc;

namespace {

// Direct transcription of the published temperature-dependent fit for
// congruent LiNbO3 (extraordinary), lambda in um, T in Celsius.
double jundt_oracle(double lambda_um, double t) {
  const double f = (t - 24.5) * (t + 570.82);
  const double a1 = 5.35583, a2 = 0.100473, a3 = 0.20692, a4 = 100.0, a5 = 11.34927, a6 = 1.5334e-2;
  const double b1 = 4.629e-7, b2 = 3.862e-8, b3 = -0.89e-8, b4 = 2.657e-5;
  const double l2 = lambda_um * lambda_um;
  const double n2 = a1 + b1 * f + (a2 + b2 * f) / (l2 - std::pow(a3 + b3 * f, 2)) + (a4 + b4 * f) / (l2 - a5 * a5) -
                    a6 * l2;
  return std::sqrt(n2);
}

double omega_um(double lambda_um) { return constants::omega_from_wavelength(lambda_um * 1e-6); }

}  // namespace

TEST_SUITE("dispersion") {
  TEST_CASE("index matches an independent evaluation of the fit") {
    const auto model = DispersionModel::jundt_congruent();
    for (double l : {0.45, 0.775, 1.0, 1.55, 2.6, 3.44, 4.9}) {
      CHECK(model.refractive_index(omega_um(l)) == doctest::Approx(jundt_oracle(l, 25.0)).epsilon(1e-13));
    }
    const auto warm = DispersionModel::jundt_congruent(80.0);
    CHECK(warm.refractive_index(omega_um(1.55)) == doctest::Approx(jundt_oracle(1.55, 80.0)).epsilon(1e-13));
  }

  TEST_CASE("frozen index values at 1.55 um and 0.775 um") {
    const auto model = DispersionModel::jundt_congruent();
    CHECK(model.refractive_index(omega_um(1.55)) == doctest::Approx(2.13788).epsilon(5e-6));
    CHECK(model.refractive_index(omega_um(0.775)) == doctest::Approx(2.17872).epsilon(5e-6));
  }

  TEST_CASE("out-of-range wavelength names the interval") {
    const auto model = DispersionModel::jundt_congruent();
    CHECK_THROWS_AS(model.refractive_index(omega_um(10.0)), RangeError);
    CHECK_THROWS_AS(model.refractive_index(omega_um(0.3)), RangeError);
    try {
      (void)model.refractive_index(omega_um(10.0));
    } catch (const RangeError& e) {
      CHECK(std::string(e.what()).find("0.4") != std::string::npos);
      CHECK(std::string(e.what()).find("5") != std::string::npos);
    }
  }

  TEST_CASE("index is finite and above 1 across the validity range") {
    for (const auto& model : {DispersionModel::jundt_congruent(), DispersionModel::zelmon_congruent()}) {
      for (int i = 0; i <= 2000; ++i) {
        const double l = model.lambda_min() + (model.lambda_max() - model.lambda_min()) * i / 2000.0;
        const double n = model.refractive_index_at_wavelength(l);
        REQUIRE(std::isfinite(n));
        REQUIRE(n > 1.0);
      }
    }
  }

  TEST_CASE("mismatch at and around the degenerate point") {
    const auto model = DispersionModel::jundt_congruent();
    const double wp = omega_um(0.775);
    const auto at = model.delta_k(wp / 2, wp / 2, wp);
    CHECK(at.delta_k == at.delta_k0);
    CHECK(at.delta_k_small == 0.0);
    for (double frac : {0.3, 0.41, 0.47}) {
      const auto a = model.delta_k(frac * wp, (1 - frac) * wp, wp);
      const auto b = model.delta_k((1 - frac) * wp, frac * wp, wp);
      CHECK(a.delta_k == b.delta_k);
      CHECK(a.delta_k_small == a.delta_k - a.delta_k0);
    }
    // Hand evaluation of k_p - k_s - k_i.
    const double ws = omega_um(1.4), wi = wp - ws;
    const double manual = (jundt_oracle(0.775, 25) * wp - jundt_oracle(1.4, 25) * ws -
                           jundt_oracle(constants::wavelength_from_omega(wi) * 1e6, 25) * wi) /
                          constants::speed_of_light;
    CHECK(model.delta_k(ws, wi, wp).delta_k == doctest::Approx(manual).epsilon(1e-10));
  }

  TEST_CASE("base domain length") {
    const auto model = DispersionModel::jundt_congruent();
    const double wp = omega_um(0.775);
    const double l0 = model.base_domain_length(wp);
    CHECK(l0 * model.delta_k0(wp) == doctest::Approx(constants::pi).epsilon(1e-15));
    CHECK(std::abs(l0 / 9.515e-6 - 1.0) < 0.02);
    CHECK(std::abs(2000 * l0 / 19e-3 - 1.0) < 0.02);
    CHECK(model.delta_k0(wp) == doctest::Approx(3.302e5).epsilon(0.02));
    const double l0_zelmon = DispersionModel::zelmon_congruent().base_domain_length(wp);
    CHECK(std::abs(l0_zelmon / 9.515e-6 - 1.0) < 0.02);
  }

  TEST_CASE("configuration section selects and round-trips a fit") {
    auto c = KeyValueConfig::parse_string("[crystal]\nsellmeier = jundt1997\ntemperature_c = 40\n");
    const auto m = DispersionModel::from_config(c);
    CHECK(m.temperature_c() == 40.0);
    CHECK(m.refractive_index(omega_um(1.55)) == doctest::Approx(jundt_oracle(1.55, 40.0)).epsilon(1e-13));

    KeyValueConfig out;
    auto custom = DispersionModel("custom", m.constant(), m.poles(), m.ir_coefficient(), 0.4e-6, 5e-6, 40.0);
    custom.write_config(out);
    const auto back = DispersionModel::from_config(out);
    for (double l : {0.5, 1.55, 3.0}) {
      CHECK(back.refractive_index(omega_um(l)) == m.refractive_index(omega_um(l)));
    }
    CHECK_THROWS_AS(DispersionModel::from_config(KeyValueConfig::parse_string("[crystal]\nsellmeier = foo\n")),
                    ConfigError);
  }
}
