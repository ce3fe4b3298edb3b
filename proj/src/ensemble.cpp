#include "spdc/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spdc/errors.hpp"
#include "spdc/parallel.hpp"
#include "spdc/phasematch.hpp"
#include "spdc/rng.hpp"

namespace spdc {
namespace {

class Welford {
 public:
  void add(const std::vector<double>& x) {
    if (count_ == 0) {
      mean_.assign(x.size(), 0.0);
      m2_.assign(x.size(), 0.0);
    } else if (x.size() != mean_.size()) {
      throw ArgumentError("estimator returned vectors of different lengths");
    }
    ++count_;
    const double n = static_cast<double>(count_);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double delta = x[i] - mean_[i];
      mean_[i] += delta / n;
      m2_[i] += delta * (x[i] - mean_[i]);
    }
  }
  std::size_t count() const { return count_; }
  const std::vector<double>& mean() const { return mean_; }
  std::vector<double> std_error() const {
    std::vector<double> out(m2_.size(), 0.0);
    if (count_ < 2) return out;
    const double n = static_cast<double>(count_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(m2_[i] / (n - 1.0) / n);
    return out;
  }

 private:
  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

}  // namespace

DomainStack realization(const EnsembleSpec& spec, std::size_t index) {
  return build_random(spec.n_domains, spec.l0, spec.sigma, child_seed(spec.base_seed, index));
}

EnsembleEstimate run_ensemble(const EnsembleSpec& spec, const Estimator& estimator) {
  if (spec.realizations < 2) throw ArgumentError("an ensemble needs at least 2 realizations");
  if (!estimator.evaluate) throw ArgumentError("estimator has no evaluation function");
  EnsembleEstimate out;
  out.estimator = estimator.name;
  out.base_seed = spec.base_seed;
  out.count = spec.realizations;

  if (spec.sigma == 0.0) {
    out.mean = estimator.evaluate(realization(spec, 0));
    out.std_error.assign(out.mean.size(), 0.0);
    return out;
  }

  const unsigned threads = spec.threads == 0 ? default_thread_count() : spec.threads;
  const std::size_t chunk = std::max<std::size_t>(16, 4 * static_cast<std::size_t>(threads));
  Welford fold;
  std::vector<std::vector<double>> results(chunk);
  std::vector<std::size_t> rejections(chunk);
  for (std::size_t start = 0; start < spec.realizations; start += chunk) {
    const std::size_t count = std::min(chunk, spec.realizations - start);
    parallel_for(count, threads, [&](std::size_t j) {
      const std::size_t index = start + j;
      try {
        const DomainStack stack = realization(spec, index);
        rejections[j] = stack.provenance().rejections;
        results[j] = estimator.evaluate(stack);
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "ensemble '" << estimator.name << "' failed at realization " << index << " (seed "
            << child_seed(spec.base_seed, index) << "): " << e.what();
        throw Error(msg.str());
      }
    });
    for (std::size_t j = 0; j < count; ++j) {
      fold.add(results[j]);
      out.rejections += rejections[j];
    }
  }
  out.mean = fold.mean();
  out.std_error = fold.std_error();
  return out;
}

Estimator spectrum_estimator(const SpectralContext& context) {
  return {"spectrum", [&context](const DomainStack& stack) {
            return spectral_density(context, StackSource{stack}, 1).values;
          }};
}

Estimator abs_f_sq_estimator(std::vector<double> delta_k) {
  return {"abs_f_sq", [dk = std::move(delta_k)](const DomainStack& stack) {
            return DomainGeometry(stack.boundaries()).abs_sq(dk);
          }};
}

Estimator pair_rate_estimator(const SpectralContext& context, std::optional<double> calibration) {
  return {"pair_rate", [&context, calibration](const DomainStack& stack) {
            return std::vector<double>{
                pair_rate(spectral_density(context, StackSource{stack}, 1), calibration).pair_rate};
          }};
}

Estimator hom_estimator(const SpectralContext& context, std::vector<double> delays) {
  return {"hom", [&context, tau = std::move(delays)](const DomainStack& stack) {
            return hom_trace(context.grid(), mean_abs_f_sq(context, StackSource{stack}, 1), tau, 1).rates;
          }};
}

Estimator sum_frequency_estimator(const SpectralContext& context, Compensation mode, QuadraticMethod method,
                                  std::size_t padding, double window) {
  return {"sumfreq", [&context, mode, method, padding, window](const DomainStack& stack) {
            const auto amplitude = two_photon_amplitude(context, StackSource{stack}, 1);
            return crop(sum_frequency_trace(compensate_phase(amplitude, mode, method), padding), window).intensity;
          }};
}

ConvergenceReport convergence_report(const std::vector<EnsembleEstimate>& nested) {
  if (nested.size() < 2) throw ArgumentError("convergence report needs at least two ensembles");
  ConvergenceReport report;
  std::vector<double> log_m, log_se;
  for (std::size_t s = 0; s < nested.size(); ++s) {
    const auto& e = nested[s];
    report.sizes.push_back(e.count);
    double se_sum = 0.0;
    for (double v : e.std_error) se_sum += v;
    const double se_mean = e.std_error.empty() ? 0.0 : se_sum / static_cast<double>(e.std_error.size());
    if (se_mean > 0.0) {
      log_m.push_back(std::log(static_cast<double>(e.count)));
      log_se.push_back(std::log(se_mean));
    }
    if (s == 0) continue;
    const auto& prev = nested[s - 1];
    if (prev.mean.size() != e.mean.size()) throw ArgumentError("nested ensembles have different shapes");
    for (std::size_t i = 0; i < e.mean.size(); ++i) {
      const double drift = std::abs(e.mean[i] - prev.mean[i]);
      report.max_drift = std::max(report.max_drift, drift);
      const double se = prev.std_error[i];
      const double scaled = se > 0.0 ? drift / se : (drift > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      report.max_drift_in_std_error = std::max(report.max_drift_in_std_error, scaled);
    }
  }
  report.converged = report.max_drift_in_std_error <= 3.0;
  if (log_m.size() < 2) {
    report.std_error_exponent = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double n = static_cast<double>(log_m.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < log_m.size(); ++i) {
      sx += log_m[i];
      sy += log_se[i];
      sxx += log_m[i] * log_m[i];
      sxy += log_m[i] * log_se[i];
    }
    report.std_error_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }
  return report;
}

}  // namespace spdc
