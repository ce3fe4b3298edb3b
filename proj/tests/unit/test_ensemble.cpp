#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <unordered_set>

#include "spdc/ensemble.hpp"
#include "spdc/errors.hpp"
#include "spdc/phasematch.hpp"
#include "spdc/rng.hpp"

using namespace spdc;

namespace {

constexpr double l0 = 9.4873461562612e-6;
const double dk0 = 3.141592653589793 / l0;

EnsembleSpec spec(std::size_t m, double sigma, unsigned threads = 1) {
  return {.realizations = m, .base_seed = 77, .n_domains = 200, .l0 = l0, .sigma = sigma, .threads = threads};
}

SpectralContext make_context(std::size_t samples) {
  const auto pump = PumpSpec::from_wavelength(775e-9, 0.1);
  return {DispersionModel::jundt_congruent(), pump, SpectralGrid::covering(pump.omega_p0, 1.0e-6, 2.6e-6, samples)};
}

}  // namespace

TEST_SUITE("ensemble") {
  TEST_CASE("periodic limit has zero spread") {
    const auto est = run_ensemble(spec(50, 0.0), abs_f_sq_estimator({dk0, 1.01 * dk0}));
    CHECK(est.count == 50);
    CHECK(est.std_error[0] == 0.0);
    CHECK(est.std_error[1] == 0.0);
    CHECK(est.mean[0] == doctest::Approx(std::norm(f_exact(build_periodic(200, l0).boundaries(), dk0))).epsilon(1e-14));
    CHECK_THROWS_AS(run_ensemble(spec(1, 1e-6), abs_f_sq_estimator({dk0})), ArgumentError);
  }

  TEST_CASE("results do not depend on the thread count") {
    const auto e = abs_f_sq_estimator({0.99 * dk0, dk0, 1.003 * dk0});
    const auto one = run_ensemble(spec(101, 2e-6, 1), e);
    const auto three = run_ensemble(spec(101, 2e-6, 3), e);
    CHECK(one.mean == three.mean);
    CHECK(one.std_error == three.std_error);
    CHECK(one.rejections == three.rejections);
  }

  TEST_CASE("mean tracks the analytic average and std error falls as 1/sqrt(M)") {
    const std::vector<double> dk{dk0, dk0 + 2e3, dk0 - 5e3};
    const auto small = run_ensemble(spec(500, 2e-6), abs_f_sq_estimator(dk));
    const auto large = run_ensemble(spec(2000, 2e-6), abs_f_sq_estimator(dk));
    for (std::size_t i = 0; i < dk.size(); ++i) {
      CHECK(large.std_error[i] / small.std_error[i] == doctest::Approx(0.5).epsilon(0.2));
      const double analytic = f_avg_sq(PhaseMismatch::make(dk[i], dk0), 200, l0, 2e-6);
      CHECK(std::abs(large.mean[i] - analytic) <= 3 * large.std_error[i] + 0.02 * analytic);
    }
  }

  TEST_CASE("convergence report") {
    const auto e = abs_f_sq_estimator({dk0, dk0 + 3e3});
    std::vector<EnsembleEstimate> nested;
    for (std::size_t m : {100, 200, 400, 800, 1600}) nested.push_back(run_ensemble(spec(m, 2e-6), e));
    const auto report = convergence_report(nested);
    CHECK(report.sizes == std::vector<std::size_t>{100, 200, 400, 800, 1600});
    CHECK(report.converged);
    CHECK(report.std_error_exponent > -0.6);
    CHECK(report.std_error_exponent < -0.4);

    const auto flat = run_ensemble(spec(10, 0.0), e);
    const auto zero = convergence_report({flat, flat});
    CHECK(zero.max_drift == 0.0);
    CHECK(zero.converged);
    CHECK(std::isnan(zero.std_error_exponent));

    auto moved = nested[1];
    moved.mean[0] += 10 * nested[0].std_error[0];
    CHECK_FALSE(convergence_report({nested[0], moved}).converged);
  }

  TEST_CASE("child seeds give distinct, non-overlapping streams") {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 10000; ++i) seeds.insert(child_seed(5, i));
    CHECK(seeds.size() == 10000);
    CHECK(child_seed(5, 0) != child_seed(6, 0));
    std::unordered_set<std::uint64_t> draws;
    draws.reserve(1 << 21);
    for (std::uint64_t i = 0; i < 10; ++i) {
      auto gen = make_generator(child_seed(5, i));
      for (int j = 0; j < 100000; ++j) draws.insert(gen());
    }
    CHECK(draws.size() == 1000000);
    CHECK(realization(spec(10, 2e-6), 3) == build_random(200, l0, 2e-6, child_seed(77, 3)));
  }

  TEST_CASE("a failing realization reports its index and seed") {
    const Estimator bad{"bad", [](const DomainStack& s) -> std::vector<double> {
                          if (s.provenance().seed == child_seed(77, 21)) throw NumericalDomainError("boom");
                          return {1.0};
                        }};
    try {
      run_ensemble(spec(40, 2e-6, 2), bad);
      FAIL("expected an error");
    } catch (const Error& e) {
      const std::string what = e.what();
      CHECK(what.find("realization 21") != std::string::npos);
      CHECK(what.find(std::to_string(child_seed(77, 21))) != std::string::npos);
      CHECK(what.find("boom") != std::string::npos);
    }
  }

  TEST_CASE("pair rate grows linearly with the number of domains") {
    const auto ctx = make_context(2048);
    std::vector<double> n, rate;
    for (std::size_t domains : {250, 500, 1000, 2000, 4000}) {
      const auto d = spectral_density(ctx, RandomEnsembleSource{domains, ctx.base_length(), 2e-6});
      n.push_back(static_cast<double>(domains));
      rate.push_back(integrate(d));
    }
    const double k = static_cast<double>(n.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
      sx += n[i];
      sy += rate[i];
      sxx += n[i] * n[i];
      sxy += n[i] * rate[i];
      syy += rate[i] * rate[i];
    }
    const double r = (k * sxy - sx * sy) / std::sqrt((k * sxx - sx * sx) * (k * syy - sy * sy));
    CHECK(r * r > 0.99);

    EnsembleSpec mc{.realizations = 40, .base_seed = 3, .n_domains = 500, .l0 = ctx.base_length(), .sigma = 2e-6};
    const auto est = run_ensemble(mc, pair_rate_estimator(ctx, std::nullopt));
    CHECK(std::abs(est.mean[0] - rate[1]) <= 3 * est.std_error[0]);
  }
}
