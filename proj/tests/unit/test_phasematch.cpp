#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cerf_oracle.hpp"
#include "spdc/constants.hpp"
#include "spdc/errors.hpp"
#include "spdc/phasematch.hpp"
#include "spdc/rng.hpp"

using namespace spdc;
using cplx = std::complex<double>;

namespace {

constexpr double l0 = 9.4873461562612e-6;
const double dk0 = constants::pi / l0;

// Composite Simpson rule for sum_n (-1)^(n-1) int exp(i dk z) dz.
cplx quadrature_oracle(std::span<const double> z, double dk, int panels = 2000) {
  cplx total = 0.0;
  for (std::size_t n = 1; n < z.size(); ++n) {
    const double a = z[n - 1], b = z[n], h = (b - a) / panels;
    cplx s = std::exp(cplx(0, dk * a)) + std::exp(cplx(0, dk * b));
    for (int j = 1; j < panels; ++j) s += (j % 2 ? 4.0 : 2.0) * std::exp(cplx(0, dk * (a + j * h)));
    total += (n % 2 == 1 ? 1.0 : -1.0) * s * h / 3.0;
  }
  return total;
}

PhaseMismatch at(double small) { return PhaseMismatch::make(dk0 + small, dk0); }

// Half-width (in delta_k) of f_avg_sq's peak around delta_k = 0.
double peak_half_width(std::size_t n, double sigma) {
  const double top = f_avg_sq(at(0.0), n, l0, sigma);
  double d = 1.0;
  while (f_avg_sq(at(d), n, l0, sigma) > 0.5 * top) d *= 1.01;
  return d;
}

}  // namespace

TEST_SUITE("phasematch") {
  TEST_CASE("exact sum agrees with brute-force quadrature") {
    const auto s = build_random(5, l0, 2e-6, 11);
    for (double dk : {0.0, 0.3 * dk0, dk0, 1.7 * dk0, -2.2 * dk0}) {
      const cplx oracle = quadrature_oracle(s.boundaries(), dk);
      const cplx value = f_exact(s.boundaries(), dk);
      CHECK(std::abs(value - oracle) <= 1e-10 * std::abs(oracle) + 1e-18);
    }
  }

  TEST_CASE("periodic closed forms") {
    for (std::size_t n : {1, 2, 10, 2000}) {
      const auto s = build_periodic(n, l0);
      CHECK(std::abs(f_exact(s.boundaries(), dk0)) == doctest::Approx(2.0 * n / dk0).epsilon(1e-12));
      const double dk = 2 * constants::pi / l0;
      CHECK(std::abs(f_exact(s.boundaries(), dk)) <= 2.0 / dk * (1 + 1e-9));
    }
    const auto one = build_periodic(1, l0);
    for (double dk : {1e3, 1e5, dk0, 7.1e5}) {
      CHECK(std::abs(f_exact(one.boundaries(), dk)) == doctest::Approx(std::abs(2 * std::sin(dk * l0 / 2) / dk)).epsilon(1e-12));
    }
  }

  TEST_CASE("zero mismatch gives the signed domain lengths") {
    const auto s = build_random(7, l0, 2e-6, 3);
    const auto z = s.boundaries();
    double expected = 0;
    for (std::size_t n = 1; n < z.size(); ++n) expected += (n % 2 ? 1.0 : -1.0) * (z[n] - z[n - 1]);
    const cplx value = f_exact(z, 0.0);
    CHECK(value.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(value.imag() == 0.0);
  }

  TEST_CASE("boundary-sum form") {
    const std::size_t n = 2000;
    const auto s = build_periodic(n, l0);
    CHECK(std::abs(f_boundary_sum(s.boundaries(), dk0, dk0)) == doctest::Approx(2.0 * (n + 1) / dk0).epsilon(1e-12));
    const double length = n * l0;
    for (double small : {0.0, 0.5 * constants::pi / length, -0.5 * constants::pi / length}) {
      const double exact = std::abs(f_exact(s.boundaries(), dk0 + small));
      const double approx = std::abs(f_boundary_sum(s.boundaries(), dk0 + small, dk0));
      CHECK(std::abs(approx - exact) / exact <= 0.01);
    }
    const auto r = build_random(2000, l0, 2.3e-6, 5);
    const cplx exact = f_exact(r.boundaries(), dk0);
    CHECK(std::abs(f_boundary_sum(r.boundaries(), dk0, dk0) - exact) / std::abs(exact) <= 0.05);
    CHECK_THROWS_AS(f_boundary_sum(s.boundaries(), 1e-4 * dk0, dk0), NumericalDomainError);
    CHECK_NOTHROW(f_boundary_sum(s.boundaries(), 2e-3 * dk0, dk0));
  }

  TEST_CASE("global shift leaves |F| unchanged") {
    const auto s = build_random(400, l0, 2e-6, 8);
    std::vector<double> shifted(s.boundaries().begin(), s.boundaries().end());
    for (auto& z : shifted) z += 1.234e-3;
    for (double dk : {0.0, 0.9 * dk0, dk0, 1.05 * dk0}) {
      CHECK(std::abs(f_exact(shifted, dk)) == doctest::Approx(std::abs(f_exact(s.boundaries(), dk))).epsilon(1e-9));
      if (dk != 0.0) {
        CHECK(std::abs(f_boundary_sum(shifted, dk, dk0)) ==
              doctest::Approx(std::abs(f_boundary_sum(s.boundaries(), dk, dk0))).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("ensemble average at zero offset reduces to a real geometric sum") {
    const std::size_t n = 2000;
    const double sigma = 2e-6;
    const double h = std::exp(-std::pow(sigma * dk0, 2) / 4);
    const double oracle = 4 / (dk0 * dk0) *
                          ((n + 1) * (1 - h * h) / std::pow(1 - h, 2) - 2 * h * (1 - std::pow(h, n + 1)) / std::pow(1 - h, 2));
    CHECK(f_avg_sq(at(0.0), n, l0, sigma) == doctest::Approx(oracle).epsilon(1e-12));
    const double slope = (f_avg_sq(at(0.0), n + 1000, l0, sigma) - f_avg_sq(at(0.0), n, l0, sigma)) / 1000;
    CHECK(slope == doctest::Approx(4 / (dk0 * dk0) * (1 + h) / (1 - h)).epsilon(1e-9));
  }

  TEST_CASE("average equals the Monte Carlo mean of the boundary sum") {
    // The closed form is the exact ensemble mean of the boundary-sum |F|^2.
    const std::size_t n = 20, m = 20000;
    const double sigma = 2e-6;
    for (double small : {0.0, -3e4, 2e4, 1.5e5}) {
      double sum = 0, sum2 = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const auto s = build_random(n, l0, sigma, child_seed(42, i));
        const double v = std::norm(f_boundary_sum(s.boundaries(), dk0 + small, dk0));
        sum += v;
        sum2 += v * v;
      }
      const double mean = sum / m;
      const double se = std::sqrt((sum2 / m - mean * mean) / (m - 1));
      CHECK(std::abs(mean - f_avg_sq(at(small), n, l0, sigma)) <= 3 * se);
    }
  }

  TEST_CASE("average matches the Monte Carlo mean of the exact sum at N = 200") {
    const std::size_t n = 200, m = 4000;
    const double sigma = 2e-6;
    for (double small : {0.0, -1e4, 1e4}) {
      double sum = 0, sum2 = 0;
      for (std::size_t i = 0; i < m; ++i) {
        const double v = std::norm(f_exact(build_random(n, l0, sigma, child_seed(9, i)).boundaries(), dk0 + small));
        sum += v;
        sum2 += v * v;
      }
      const double mean = sum / m;
      const double se = std::sqrt((sum2 / m - mean * mean) / (m - 1));
      CHECK(std::abs(mean - f_avg_sq(at(small), n, l0, sigma)) <= 3 * se);
    }
  }

  TEST_CASE("small-sigma limit") {
    const std::size_t n = 2000;
    const auto periodic = build_periodic(n, l0);
    const double limit = std::norm(f_boundary_sum(periodic.boundaries(), dk0, dk0));
    const double a = f_avg_sq(at(0.0), n, l0, 1e-9);
    const double b = f_avg_sq(at(0.0), n, l0, 1e-10);
    CHECK(std::abs(b - limit) < std::abs(a - limit));
    CHECK(std::abs(b / limit - 1) < 1e-5);
    // The exact periodic value differs from the limit by the O(1/N) boundary term.
    const double exact = std::norm(f_exact(periodic.boundaries(), dk0));
    CHECK(std::abs(b / exact - 1) < 2.5 / n);
    CHECK(f_avg_sq(at(0.0), n, l0, 0.0) == doctest::Approx(exact).epsilon(1e-12));
    CHECK_THROWS_AS(f_avg_sq(at(0.0), n, l0, -1e-6), ArgumentError);
  }

  TEST_CASE("peak widens with sigma") {
    double prev = 0;
    for (double sigma : {0.3e-6, 0.5e-6, 1e-6, 2e-6, 3e-6}) {
      const double w = peak_half_width(2000, sigma);
      CHECK(w > prev);
      prev = w;
    }
  }

  TEST_CASE("chirped closed form") {
    const std::size_t n = 2000;
    for (double zeta : {1e5, 1e6}) {
      const double zp = zeta / dk0;
      const auto stack = build_chirped(n, l0, zeta, dk0);
      const DomainGeometry geometry(stack.boundaries());
      const double plateau = 4 * constants::pi / (std::pow(dk0, 3) * zp * l0 * l0);
      int inside = 0;
      for (int j = -200; j <= 200; ++j) {
        const double small = j * 1.5 * zeta * l0 * n / 200.0;
        const auto sample = f_chirped(at(small), n, l0, zp);
        REQUIRE(sample.value.has_value());
        CHECK(sample.abs_sq == doctest::Approx(std::norm(*sample.value)).epsilon(1e-14));
        if (sample.abs_sq > 0.5 * plateau) {
          ++inside;
          const double exact = std::norm(geometry.evaluate(dk0 + small));
          CHECK(std::abs(sample.abs_sq / exact - 1) < 0.01);
        }
      }
      CHECK(inside > 20);
      CHECK(f_chirped(at(3 * zeta * l0 * n), n, l0, zp).abs_sq < 0.01 * plateau);
      CHECK(f_chirped(at(-3 * zeta * l0 * n), n, l0, zp).abs_sq < 0.01 * plateau);
    }
    // Wider plateau for the stronger chirp.
    const auto width = [&](double zeta) {
      const double zp = zeta / dk0;
      const double plateau = 4 * constants::pi / (std::pow(dk0, 3) * zp * l0 * l0);
      int count = 0;
      for (int j = -4000; j <= 4000; ++j) count += f_chirped(at(j * 10.0), n, l0, zp).abs_sq > 0.5 * plateau;
      return count;
    };
    CHECK(width(1e6) > width(1e5));
    CHECK_THROWS_AS(f_chirped(at(0.0), n, l0, 0.0), ArgumentError);
  }

  TEST_CASE("complex error function") {
    CHECK(cerf(0.0) == cplx(0.0, 0.0));
    CHECK(cerf(1.0).real() == doctest::Approx(0.842700792949715).epsilon(1e-14));
    CHECK(cerf(1.0).imag() == 0.0);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> re(-40.0, 40.0), im(-20.0, 20.0);
    for (int i = 0; i < 100; ++i) {
      const cplx z(re(gen), im(gen));
      const cplx value = cerf(z);
      const cplx oracle = spdc_test::cerf_series_oracle(z);
      REQUIRE(std::abs(value - oracle) <= 1e-10 * std::abs(oracle));
      CHECK(cerf(std::conj(z)) == std::conj(value));
      CHECK(cerf(-z) == -value);
    }
    // Far along the diagonal used by the chirped closed form (arbitrary-precision reference values).
    const std::pair<cplx, cplx> frozen[] = {
        {{500, -500}, {1.0006555279356194944, 0.00045486580217339072865}},
        {{3000.5, -3000.5}, {0.99989749515804719005, -0.000084680262091015517942}},
        {{8, -7.5}, {0.9999955484258826464, -0.000021702836006391388522}},
        {{2.5, 22}, {5.3717971278433991868e+204, -7.7588842025267644837e+205}},
    };
    for (const auto& [z, expected] : frozen) CHECK(std::abs(cerf(z) - expected) <= 1e-10 * std::abs(expected));
    CHECK_THROWS_AS(cerf(cplx(0.5, 30.0)), NumericalDomainError);
    CHECK_THROWS_AS(cerf(cplx(3.0, 40.0)), NumericalDomainError);
    CHECK_THROWS_AS(cerf(cplx(2e4, 0.0)), NumericalDomainError);
  }
}
