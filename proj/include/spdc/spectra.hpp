#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spdc/dispersion.hpp"
#include "spdc/structure.hpp"

namespace spdc {

/// Continuous-wave pump. |xi_p|^2 is taken as power / 1 W; the absolute scale
/// is fixed later by calibrate().
struct PumpSpec {
  double omega_p0 = 0.0;  // rad/s
  double power = 0.1;     // W

  static PumpSpec from_wavelength(double lambda_m, double power_w);
  double amplitude_sq() const { return power; }
};

/// Uniform signal-frequency grid symmetric about omega_p0 / 2:
/// omega_m = omega_p0/2 + (m - (G-1)/2) step, m = 0..G-1. Sample m and
/// sample G-1-m are an energy-conserving signal/idler pair.
class SpectralGrid {
 public:
  SpectralGrid(double omega_p0, double half_span, std::size_t samples);

  /// Smallest symmetric grid whose signal range contains [lambda_min, lambda_max].
  static SpectralGrid covering(double omega_p0, double lambda_min_m, double lambda_max_m, std::size_t samples);

  std::size_t size() const { return samples_; }
  double omega_p0() const { return omega_p0_; }
  double center() const { return 0.5 * omega_p0_; }
  double half_span() const { return half_span_; }
  double step() const { return step_; }
  /// Offset Omega_m = omega_m - omega_p0 / 2.
  double offset(std::size_t m) const;
  double omega(std::size_t m) const { return center() + offset(m); }
  double idler(std::size_t m) const { return center() - offset(m); }
  std::vector<double> omegas() const;
  /// Same window with a different sample count.
  SpectralGrid resampled(std::size_t samples) const { return {omega_p0_, half_span_, samples}; }

 private:
  double omega_p0_;
  double half_span_;
  std::size_t samples_;
  double step_;
};

/// Non-negative samples on a grid. Densities are per unit angular frequency.
struct Spectrum {
  SpectralGrid grid;
  std::vector<double> values;
};

/// Trapezoidal integral over the grid.
double integrate(const Spectrum& spectrum);

/// Coupling g(omega_s, omega_i) = sqrt(omega_s omega_i) / (i c pi sqrt(n_s n_i)),
/// with the susceptibility set to 1 (it is absorbed by calibration).
std::complex<double> coupling_g(double omega_s, double omega_i, const DispersionModel& model);

/// Per-sample quantities on the line omega_i = omega_p0 - omega_s that every
/// source reuses: the phase mismatch and |g|^2.
class SpectralContext {
 public:
  SpectralContext(DispersionModel model, PumpSpec pump, SpectralGrid grid);

  const DispersionModel& model() const { return model_; }
  const PumpSpec& pump() const { return pump_; }
  const SpectralGrid& grid() const { return grid_; }
  double delta_k0() const { return delta_k0_; }
  double base_length() const { return base_length_; }
  const std::vector<PhaseMismatch>& mismatch() const { return mismatch_; }
  const std::vector<double>& delta_k() const { return delta_k_; }
  const std::vector<double>& coupling_sq() const { return coupling_sq_; }
  /// Same model and pump at a different power.
  SpectralContext with_power(double power_w) const;
  SpectralContext with_grid(SpectralGrid grid) const;

 private:
  DispersionModel model_;
  PumpSpec pump_;
  SpectralGrid grid_;
  double delta_k0_;
  double base_length_;
  std::vector<PhaseMismatch> mismatch_;
  std::vector<double> delta_k_;
  std::vector<double> coupling_sq_;
};

/// Concrete crystal.
struct StackSource {
  DomainStack stack;
};
/// Analytic ensemble average over random stacks.
struct RandomEnsembleSource {
  std::size_t n_domains = 0;
  double l0 = 0.0;
  double sigma = 0.0;
};
/// Closed-form chirped crystal. zeta in m^-2; zeta' = zeta / delta_k0.
struct ChirpedSource {
  std::size_t n_domains = 0;
  double l0 = 0.0;
  double zeta = 0.0;
};
using Source = std::variant<StackSource, RandomEnsembleSource, ChirpedSource>;

std::string describe(const Source& source);

/// <|F|^2> at every grid sample.
std::vector<double> mean_abs_f_sq(const SpectralContext& context, const Source& source, unsigned threads = 0);
/// F at every grid sample; throws PhaseUnavailableError for ensemble sources.
std::vector<std::complex<double>> phase_matching(const SpectralContext& context, const Source& source,
                                                 unsigned threads = 0);

/// Pair-number density n(omega_s) = |g|^2 |xi_p|^2 / (2 pi) <|F|^2> on the
/// line omega_i = omega_p0 - omega_s, per unit time.
Spectrum spectral_density(const SpectralContext& context, const Source& source, unsigned threads = 0);
/// Same from a precomputed <|F|^2> curve.
Spectrum spectral_density(const SpectralContext& context, const std::vector<double>& abs_f_sq);

/// S_s = hbar omega_s n(omega_s). With `normalize` the result is rescaled so
/// that the integral of S_s / (hbar omega_s) is 1.
Spectrum signal_spectrum(const Spectrum& density, bool normalize = false);

struct Fwhm {
  double omega_lo = 0.0;  // rad/s
  double omega_hi = 0.0;
  double width_omega = 0.0;   // rad/s
  double width_lambda = 0.0;  // m, lambda(omega_lo) - lambda(omega_hi)
};

/// Width between the outermost crossings of half the global maximum, each
/// located by linear interpolation. A curve still above half maximum at a grid
/// edge throws RangeError.
Fwhm fwhm(const Spectrum& spectrum);

struct RateReport {
  double pair_rate = 0.0;  // pairs/s when calibrated, raw integral otherwise
  double calibration_constant = 1.0;
  bool calibrated = false;
  std::string configuration;
};

/// N = constant * integral of n(omega_s) d omega_s.
RateReport pair_rate(const Spectrum& density, std::optional<double> calibration, std::string configuration = {});

/// Constant that makes a periodic crystal of `n_domains` pumped with
/// `reference_power` emit `reference_rate` pairs/s on the context's grid.
double calibrate(const SpectralContext& context, double reference_rate, std::size_t n_domains,
                 double reference_power);

struct SigmaMatch {
  double sigma = 0.0;               // m
  double target_width = 0.0;        // rad/s, chirped FWHM
  double matched_width = 0.0;       // rad/s, random-ensemble FWHM at sigma
  int iterations = 0;
};

struct SigmaSearch {
  double sigma_min = 1e-9;   // m
  double sigma_max = 8e-6;   // m
  double rel_tol = 1e-3;
  unsigned threads = 0;
};

/// FWHM of the pair-number spectrum of the chirped crystal (exact stack sum).
double chirped_width(const SpectralContext& context, double zeta, std::size_t n_domains, unsigned threads = 0);
/// FWHM of the analytic ensemble pair-number spectrum.
double random_width(const SpectralContext& context, double sigma, std::size_t n_domains);

/// Sigma whose ensemble-averaged spectrum has the chirped crystal's FWHM,
/// found by bisection on the monotone map sigma -> FWHM. Throws
/// NoSolutionError when the target is outside [FWHM(sigma_min), FWHM(sigma_max)].
SigmaMatch sigma_for_zeta(const SpectralContext& context, double zeta, std::size_t n_domains,
                          const SigmaSearch& search = {});
SigmaMatch sigma_for_width(const SpectralContext& context, double target_width, std::size_t n_domains,
                           const SigmaSearch& search = {});

struct RateRatio {
  double ratio = 0.0;  // N(random, matched sigma) / N(chirped)
  SigmaMatch match;
  double random_rate = 0.0;   // raw integral
  double chirped_rate = 0.0;  // raw integral
};

RateRatio rate_ratio(const SpectralContext& context, double zeta, std::size_t n_domains,
                     const SigmaSearch& search = {});

}  // namespace spdc
