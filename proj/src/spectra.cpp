#include "spdc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "spdc/constants.hpp"
#include "spdc/errors.hpp"
#include "spdc/parallel.hpp"
#include "spdc/phasematch.hpp"
#include "spdc/summation.hpp"

namespace spdc {
namespace {

constexpr std::size_t block_size = 256;

template <typename Body>
void for_blocks(std::size_t n, unsigned threads, Body&& body) {
  const std::size_t blocks = (n + block_size - 1) / block_size;
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t begin = b * block_size;
    body(begin, std::min(n, begin + block_size));
  });
}

}  // namespace

PumpSpec PumpSpec::from_wavelength(double lambda_m, double power_w) {
  if (!(lambda_m > 0.0)) throw ArgumentError("pump wavelength must be positive");
  if (!(power_w > 0.0)) throw ArgumentError("pump power must be positive");
  return {constants::omega_from_wavelength(lambda_m), power_w};
}

SpectralGrid::SpectralGrid(double omega_p0, double half_span, std::size_t samples)
    : omega_p0_(omega_p0), half_span_(half_span), samples_(samples), step_(0.0) {
  if (!(omega_p0 > 0.0)) throw ArgumentError("grid needs a positive pump frequency");
  if (!(half_span > 0.0) || !(half_span < 0.5 * omega_p0)) {
    throw ArgumentError("grid half span must lie in (0, omega_p0 / 2)");
  }
  if (samples < 3) throw ArgumentError("grid needs at least 3 samples");
  step_ = 2.0 * half_span / static_cast<double>(samples - 1);
}

SpectralGrid SpectralGrid::covering(double omega_p0, double lambda_min_m, double lambda_max_m, std::size_t samples) {
  if (!(lambda_min_m > 0.0) || !(lambda_max_m > lambda_min_m)) {
    throw ArgumentError("grid window needs 0 < lambda_min < lambda_max");
  }
  const double center = 0.5 * omega_p0;
  const double half = std::max(std::abs(constants::omega_from_wavelength(lambda_min_m) - center),
                               std::abs(constants::omega_from_wavelength(lambda_max_m) - center));
  return {omega_p0, half, samples};
}

double SpectralGrid::offset(std::size_t m) const {
  return (static_cast<double>(m) - 0.5 * static_cast<double>(samples_ - 1)) * step_;
}

std::vector<double> SpectralGrid::omegas() const {
  std::vector<double> out(samples_);
  for (std::size_t m = 0; m < samples_; ++m) out[m] = omega(m);
  return out;
}

double integrate(const Spectrum& spectrum) {
  const auto& v = spectrum.values;
  if (v.size() < 2) return 0.0;
  CompensatedSum sum;
  sum.add(0.5 * v.front());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) sum.add(v[i]);
  sum.add(0.5 * v.back());
  return sum.value() * spectrum.grid.step();
}

std::complex<double> coupling_g(double omega_s, double omega_i, const DispersionModel& model) {
  const double ns = model.refractive_index(omega_s);
  const double ni = model.refractive_index(omega_i);
  const double magnitude = std::sqrt(omega_s * omega_i / (ns * ni)) / (constants::speed_of_light * constants::pi);
  return {0.0, -magnitude};  // 1/i = -i
}

SpectralContext::SpectralContext(DispersionModel model, PumpSpec pump, SpectralGrid grid)
    : model_(std::move(model)), pump_(pump), grid_(grid) {
  if (!(pump_.power > 0.0)) throw ArgumentError("pump power must be positive");
  if (grid_.omega_p0() != pump_.omega_p0) throw ArgumentError("grid and pump disagree on omega_p0");
  delta_k0_ = model_.delta_k0(pump_.omega_p0);
  base_length_ = constants::pi / delta_k0_;
  const std::size_t n = grid_.size();
  mismatch_.resize(n);
  delta_k_.resize(n);
  coupling_sq_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double ws = grid_.omega(m);
    const double wi = grid_.idler(m);
    mismatch_[m] = model_.delta_k(ws, wi, pump_.omega_p0);
    delta_k_[m] = mismatch_[m].delta_k;
    coupling_sq_[m] = std::norm(coupling_g(ws, wi, model_));
  }
}

SpectralContext SpectralContext::with_power(double power_w) const {
  SpectralContext copy = *this;
  if (!(power_w > 0.0)) throw ArgumentError("pump power must be positive");
  copy.pump_.power = power_w;
  return copy;
}

SpectralContext SpectralContext::with_grid(SpectralGrid grid) const { return {model_, pump_, grid}; }

std::string describe(const Source& source) {
  std::ostringstream out;
  out.precision(6);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, StackSource>) {
          out << to_string(s.stack.kind()) << " stack, " << s.stack.domain_count() << " domains";
          if (s.stack.kind() == StackKind::random) {
            out << ", sigma " << s.stack.provenance().sigma << " m, seed " << s.stack.provenance().seed;
          } else if (s.stack.kind() == StackKind::chirped) {
            out << ", zeta " << s.stack.provenance().zeta << " m^-2";
          }
        } else if constexpr (std::is_same_v<T, RandomEnsembleSource>) {
          out << "random ensemble (analytic), " << s.n_domains << " domains, sigma " << s.sigma << " m";
        } else {
          out << "chirped (closed form), " << s.n_domains << " domains, zeta " << s.zeta << " m^-2";
        }
      },
      source);
  return out.str();
}

std::vector<std::complex<double>> phase_matching(const SpectralContext& context, const Source& source,
                                                 unsigned threads) {
  const std::size_t n = context.grid().size();
  std::vector<std::complex<double>> out(n);
  if (const auto* stack = std::get_if<StackSource>(&source)) {
    const DomainGeometry geometry(stack->stack.boundaries());
    const auto& dk = context.delta_k();
    for_blocks(n, threads, [&](std::size_t begin, std::size_t end) {
      geometry.evaluate(std::span(dk).subspan(begin, end - begin), std::span(out).subspan(begin, end - begin));
    });
    return out;
  }
  if (const auto* chirped = std::get_if<ChirpedSource>(&source)) {
    if (chirped->zeta == 0.0) {
      return phase_matching(context, StackSource{build_periodic(chirped->n_domains, chirped->l0)}, threads);
    }
    const double zeta_prime = chirped->zeta / context.delta_k0();
    for (std::size_t m = 0; m < n; ++m) {
      out[m] = *f_chirped(context.mismatch()[m], chirped->n_domains, chirped->l0, zeta_prime).value;
    }
    return out;
  }
  throw PhaseUnavailableError("an ensemble average carries no spectral phase; evaluate single realizations instead");
}

std::vector<double> mean_abs_f_sq(const SpectralContext& context, const Source& source, unsigned threads) {
  if (const auto* random = std::get_if<RandomEnsembleSource>(&source)) {
    if (random->sigma == 0.0) {
      return mean_abs_f_sq(context, StackSource{build_periodic(random->n_domains, random->l0)}, threads);
    }
    std::vector<double> out(context.grid().size());
    for (std::size_t m = 0; m < out.size(); ++m) {
      out[m] = f_avg_sq(context.mismatch()[m], random->n_domains, random->l0, random->sigma);
    }
    return out;
  }
  const auto values = phase_matching(context, source, threads);
  std::vector<double> out(values.size());
  for (std::size_t m = 0; m < values.size(); ++m) out[m] = std::norm(values[m]);
  return out;
}

Spectrum spectral_density(const SpectralContext& context, const std::vector<double>& abs_f_sq) {
  if (abs_f_sq.size() != context.grid().size()) throw ArgumentError("|F|^2 curve does not match the grid");
  Spectrum out{context.grid(), std::vector<double>(abs_f_sq.size())};
  const double scale = context.pump().amplitude_sq() / (2.0 * constants::pi);
  for (std::size_t m = 0; m < abs_f_sq.size(); ++m) out.values[m] = context.coupling_sq()[m] * scale * abs_f_sq[m];
  return out;
}

Spectrum spectral_density(const SpectralContext& context, const Source& source, unsigned threads) {
  return spectral_density(context, mean_abs_f_sq(context, source, threads));
}

Spectrum signal_spectrum(const Spectrum& density, bool normalize) {
  Spectrum out = density;
  double scale = 1.0;
  if (normalize) {
    const double photons = integrate(density);
    if (!(photons > 0.0)) throw NumericalDomainError("cannot normalize an empty spectrum");
    scale = 1.0 / photons;
  }
  for (std::size_t m = 0; m < out.values.size(); ++m) {
    out.values[m] = density.values[m] * constants::hbar * density.grid.omega(m) * scale;
  }
  return out;
}

Fwhm fwhm(const Spectrum& spectrum) {
  const auto& v = spectrum.values;
  const auto peak = std::max_element(v.begin(), v.end());
  if (peak == v.end() || !(*peak > 0.0)) throw NumericalDomainError("FWHM undefined: spectrum has no positive maximum");
  const double half = 0.5 * *peak;
  std::size_t lo = 0;
  while (v[lo] < half) ++lo;
  std::size_t hi = v.size() - 1;
  while (v[hi] < half) --hi;
  if (lo == 0 || hi == v.size() - 1) throw RangeError("FWHM undefined: curve above half maximum at the grid edge");
  const auto& g = spectrum.grid;
  const auto crossing = [&](std::size_t below, std::size_t above) {
    const double t = (half - v[below]) / (v[above] - v[below]);
    return g.omega(below) + t * (g.omega(above) - g.omega(below));
  };
  Fwhm out;
  out.omega_lo = crossing(lo - 1, lo);
  out.omega_hi = crossing(hi + 1, hi);
  out.width_omega = out.omega_hi - out.omega_lo;
  out.width_lambda = constants::wavelength_from_omega(out.omega_lo) - constants::wavelength_from_omega(out.omega_hi);
  return out;
}

RateReport pair_rate(const Spectrum& density, std::optional<double> calibration, std::string configuration) {
  RateReport report;
  report.configuration = std::move(configuration);
  report.calibrated = calibration.has_value();
  report.calibration_constant = calibration.value_or(1.0);
  report.pair_rate = report.calibration_constant * integrate(density);
  return report;
}

double calibrate(const SpectralContext& context, double reference_rate, std::size_t n_domains,
                 double reference_power) {
  if (!(reference_rate > 0.0)) throw ArgumentError("reference rate must be positive");
  const SpectralContext at_reference = context.with_power(reference_power);
  const Source periodic = StackSource{build_periodic(n_domains, context.base_length())};
  const double raw = integrate(spectral_density(at_reference, periodic));
  if (!(raw > 0.0) || !std::isfinite(raw)) throw CalibrationError("reference configuration gives no pairs");
  return reference_rate / raw;
}

double chirped_width(const SpectralContext& context, double zeta, std::size_t n_domains, unsigned threads) {
  const DomainStack stack = build_chirped(n_domains, context.base_length(), zeta, context.delta_k0());
  return fwhm(spectral_density(context, StackSource{stack}, threads)).width_omega;
}

double random_width(const SpectralContext& context, double sigma, std::size_t n_domains) {
  return fwhm(spectral_density(context, RandomEnsembleSource{n_domains, context.base_length(), sigma})).width_omega;
}

SigmaMatch sigma_for_width(const SpectralContext& context, double target_width, std::size_t n_domains,
                           const SigmaSearch& search) {
  if (!(search.sigma_min > 0.0) || !(search.sigma_max > search.sigma_min)) {
    throw ArgumentError("sigma search needs 0 < sigma_min < sigma_max");
  }
  // A spectrum wider than the grid counts as infinitely wide.
  const auto width = [&](double sigma) {
    try {
      return random_width(context, sigma, n_domains);
    } catch (const RangeError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  double lo = search.sigma_min;
  double hi = search.sigma_max;
  double w_lo = width(lo);
  double w_hi = width(hi);
  SigmaMatch match;
  match.target_width = target_width;
  if (std::abs(w_lo - target_width) <= search.rel_tol * target_width) {
    match.sigma = lo;
    match.matched_width = w_lo;
    return match;
  }
  if (target_width < w_lo || target_width > w_hi) {
    std::ostringstream msg;
    msg << "no sigma in [" << lo << ", " << hi << "] m matches FWHM " << target_width << " rad/s (range " << w_lo
        << " to " << w_hi << ")";
    throw NoSolutionError(msg.str());
  }
  for (int it = 1; it <= 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double w_mid = width(mid);
    match.iterations = it;
    match.sigma = mid;
    match.matched_width = w_mid;
    if (std::abs(w_mid - target_width) <= 0.5 * search.rel_tol * target_width) return match;
    if (w_mid < target_width) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-12 * hi) break;
  }
  if (std::abs(match.matched_width - target_width) > search.rel_tol * target_width) {
    throw NoSolutionError("sigma bisection stalled: FWHM(sigma) is not continuous at the target");
  }
  return match;
}

SigmaMatch sigma_for_zeta(const SpectralContext& context, double zeta, std::size_t n_domains,
                          const SigmaSearch& search) {
  if (!(zeta > 0.0)) throw ArgumentError("zeta must be positive");
  return sigma_for_width(context, chirped_width(context, zeta, n_domains, search.threads), n_domains, search);
}

RateRatio rate_ratio(const SpectralContext& context, double zeta, std::size_t n_domains, const SigmaSearch& search) {
  RateRatio out;
  const DomainStack stack = build_chirped(n_domains, context.base_length(), zeta, context.delta_k0());
  const Spectrum chirped = spectral_density(context, StackSource{stack}, search.threads);
  out.match = sigma_for_width(context, fwhm(chirped).width_omega, n_domains, search);
  out.chirped_rate = integrate(chirped);
  out.random_rate =
      integrate(spectral_density(context, RandomEnsembleSource{n_domains, context.base_length(), out.match.sigma}));
  out.ratio = out.random_rate / out.chirped_rate;
  return out;
}

}  // namespace spdc
