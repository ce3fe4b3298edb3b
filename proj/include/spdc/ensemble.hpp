#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spdc/interference.hpp"
#include "spdc/spectra.hpp"
#include "spdc/structure.hpp"

namespace spdc {

/// Ensemble of random stacks; realization i is built from child_seed(base_seed, i).
struct EnsembleSpec {
  std::size_t realizations = 1000;
  std::uint64_t base_seed = 1;
  std::size_t n_domains = 2000;
  double l0 = 0.0;     // m
  double sigma = 0.0;  // m
  unsigned threads = 0;
};

/// Observable of one realization; every call for a given ensemble must
/// return vectors of the same length.
struct Estimator {
  std::string name;
  std::function<std::vector<double>(const DomainStack&)> evaluate;
};

struct EnsembleEstimate {
  std::string estimator;
  std::vector<double> mean;
  std::vector<double> std_error;  // sample standard deviation / sqrt(M)
  std::size_t count = 0;
  std::uint64_t base_seed = 0;
  std::size_t rejections = 0;  // redrawn domain lengths over all realizations
};

DomainStack realization(const EnsembleSpec& spec, std::size_t index);

/// Builds the M stacks, evaluates the estimator on each and folds the results
/// in index order (Welford), so the estimate is bit-identical for any thread
/// count. sigma = 0 evaluates the single periodic stack once. A failing
/// realization aborts with its index and seed.
EnsembleEstimate run_ensemble(const EnsembleSpec& spec, const Estimator& estimator);

/// Pair-number density on the context grid.
Estimator spectrum_estimator(const SpectralContext& context);
/// |F|^2 at fixed mismatches (rad/m).
Estimator abs_f_sq_estimator(std::vector<double> delta_k);
/// Integrated pair rate; calibrated when a constant is given.
Estimator pair_rate_estimator(const SpectralContext& context, std::optional<double> calibration);
/// R_n(tau) of each realization.
Estimator hom_estimator(const SpectralContext& context, std::vector<double> delays);
/// Unit-area I^sum(tau) of each realization after compensation, cropped to
/// |tau| <= window.
Estimator sum_frequency_estimator(const SpectralContext& context, Compensation mode, QuadraticMethod method,
                                  std::size_t padding, double window);

struct ConvergenceReport {
  std::vector<std::size_t> sizes;
  double max_drift = 0.0;              // max |mean(2M) - mean(M)| over elements and steps
  double max_drift_in_std_error = 0.0;  // same, in units of the smaller ensemble's std_error
  double std_error_exponent = 0.0;     // slope of log(mean std_error) against log(M); NaN if all zero
  bool converged = true;
};

/// Diagnostics for nested ensembles (same base seed, increasing M). Flags
/// non-convergence when a mean moves by more than 3 std_error.
ConvergenceReport convergence_report(const std::vector<EnsembleEstimate>& nested);

}  // namespace spdc
