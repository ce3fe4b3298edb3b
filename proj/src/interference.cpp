#include "spdc/interference.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <sstream>

#include "spdc/constants.hpp"
#include "spdc/detail/phasor_kernel.hpp"
#include "spdc/errors.hpp"
#include "spdc/parallel.hpp"
#include "spdc/summation.hpp"

namespace spdc {
namespace {

using cplx = std::complex<double>;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// Forward DFT Y_k = sum_j y_j exp(-2 pi i j k / n), in place.
void forward_fft(std::vector<cplx>& data) {
  const int n = static_cast<int>(data.size());
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw NumericalDomainError("FFTW could not create a plan");
  fftw_execute(plan);
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(plan);
}

double max_abs_sq(const std::vector<cplx>& values) {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::norm(v));
  return m;
}

// Weighted least squares for p(x) = c0 + c1 x + c2 x^2, x scaled by `scale`.
std::array<double, 3> fit_quadratic(std::span<const double> x, std::span<const double> y,
                                    std::span<const double> w) {
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  std::array<double, 5> moments{};
  std::array<double, 3> rhs{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = x[i] / scale;
    double p = w[i];
    for (int k = 0; k < 5; ++k) {
      moments[k] += p;
      if (k < 3) rhs[k] += p * y[i];
      p *= u;
    }
  }
  std::array<std::array<double, 4>, 3> a{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) a[r][c] = moments[r + c];
    a[r][3] = rhs[r];
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0) throw NumericalDomainError("quadratic phase fit is singular (fewer than 3 distinct points)");
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
    }
  }
  const double c0 = a[0][3] / a[0][0];
  const double c1 = a[1][3] / a[1][1];
  const double c2 = a[2][3] / a[2][2];
  return {c0, c1 / scale, c2 / (scale * scale)};
}

PhasePolynomial least_squares_fit(const TwoPhotonAmplitude& amplitude, QuadraticMethod method) {
  const auto& v = amplitude.values;
  const double peak = max_abs_sq(v);
  if (!(peak > 0.0)) throw UnwrapError("amplitude is identically zero");
  std::size_t first = 0;
  while (std::norm(v[first]) < 0.5 * peak) ++first;
  std::size_t last = v.size() - 1;
  while (std::norm(v[last]) < 0.5 * peak) --last;
  const auto phase = unwrapped_phase(amplitude, first, last);
  std::vector<double> x, y, w;
  for (std::size_t m = first; m <= last; ++m) {
    const double a = std::norm(v[m]);
    if (a < 0.5 * peak) continue;
    x.push_back(method == QuadraticMethod::least_squares_omega ? amplitude.grid.offset(m) : amplitude.delta_k_small[m]);
    y.push_back(phase[m - first]);
    w.push_back(a);
  }
  const auto c = fit_quadratic(x, y, w);
  return {method, c[0], c[1], c[2]};
}

// |sum_m Phi_m exp(-i (a x_m + b x_m^2))| over the given samples.
class PeakObjective {
 public:
  PeakObjective(std::vector<double> x, std::vector<cplx> phi)
      : x_(std::move(x)), phi_(std::move(phi)), phase_(x_.size()), re_(x_.size()), im_(x_.size()) {}

  cplx sum(double a, double b) {
    for (std::size_t i = 0; i < x_.size(); ++i) phase_[i] = -(a + b * x_[i]) * x_[i];
    detail::unit_phasors(1.0, phase_, re_, im_);
    CompensatedComplexSum s;
    for (std::size_t i = 0; i < x_.size(); ++i) s.add(phi_[i] * cplx(re_[i], im_[i]));
    return s.value();
  }
  double operator()(double a, double b) { return std::abs(sum(a, b)); }

  const std::vector<double>& x() const { return x_; }
  const std::vector<cplx>& phi() const { return phi_; }

 private:
  std::vector<double> x_;
  std::vector<cplx> phi_;
  std::vector<double> phase_, re_, im_;
};

// Best linear coefficient a in [a_min, a_max] for fixed b, scanned with an FFT
// of the amplitude binned on a uniform x grid.
std::pair<double, double> scan_linear(const PeakObjective& objective, double b, double x_min, double bin,
                                      std::size_t fft_size, double a_min, double a_max) {
  std::vector<cplx> bins(fft_size, cplx(0.0, 0.0));
  const auto& x = objective.x();
  const auto& phi = objective.phi();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto j = static_cast<std::size_t>(std::lround((x[i] - x_min) / bin));
    bins[j] += phi[i] * std::polar(1.0, -b * x[i] * x[i]);
  }
  forward_fft(bins);
  const double da = 2.0 * constants::pi / (static_cast<double>(fft_size) * bin);
  double best_a = 0.0;
  double best = -1.0;
  const auto n = static_cast<std::ptrdiff_t>(fft_size);
  for (std::ptrdiff_t k = -n / 2; k < n / 2; ++k) {
    const double a = static_cast<double>(k) * da;
    if (a < a_min || a > a_max) continue;
    const double value = std::abs(bins[static_cast<std::size_t>((k + n) % n)]);
    if (value > best) {
      best = value;
      best_a = a;
    }
  }
  return {best_a, best};
}

PhasePolynomial peak_fit(const TwoPhotonAmplitude& amplitude) {
  const auto& v = amplitude.values;
  const double peak = max_abs_sq(v);
  if (!(peak > 0.0)) throw UnwrapError("amplitude is identically zero");
  std::vector<double> x;
  std::vector<cplx> phi;
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (std::norm(v[m]) < 1e-8 * peak) continue;
    x.push_back(amplitude.delta_k_small[m]);
    phi.push_back(v[m]);
  }
  PeakObjective objective(x, phi);
  const auto [x_lo, x_hi] = std::minmax_element(x.begin(), x.end());
  const double x_min = *x_lo;
  const double x_span = std::max(*x_hi - *x_lo, 1e-30);
  const double x_abs = std::max(std::abs(*x_lo), std::abs(*x_hi));

  const double length = amplitude.crystal_length > 0.0 ? amplitude.crystal_length : 1.0 / x_span;
  const double a_min = -0.1 * length;
  const double a_max = 1.1 * length;
  const double bin = 0.1 / std::max(std::abs(a_min), std::abs(a_max));
  const auto bins = static_cast<std::size_t>(std::ceil(x_span / bin)) + 1;
  const std::size_t fft_size = next_power_of_two(std::max<std::size_t>(
      bins, static_cast<std::size_t>(std::ceil(2.0 * constants::pi * x_abs / (0.5 * bin)))));

  PhasePolynomial seed;
  try {
    seed = least_squares_fit(amplitude, QuadraticMethod::least_squares_delta_k);
  } catch (const UnwrapError&) {
    seed.c2 = 0.0;
  }
  const double b_unit = 1.0 / (x_abs * x_abs);
  const double b_range = std::max(300.0, 1.5 * std::abs(seed.c2) / b_unit);
  std::vector<double> b_candidates{0.0, seed.c2};
  for (double t = -b_range; t <= b_range; t += 1.0) b_candidates.push_back(t * b_unit);

  double best_a = 0.0, best_b = 0.0, best = -1.0;
  for (double b : b_candidates) {
    const auto [a, value] = scan_linear(objective, b, x_min, bin, fft_size, a_min, a_max);
    if (value > best) {
      best = value;
      best_a = a;
      best_b = b;
    }
  }

  // Pattern search with exact sums.
  double step_a = 0.5 / x_abs;
  double step_b = 1.0 * b_unit;
  best = objective(best_a, best_b);
  for (int halvings = 0; halvings < 40;) {
    bool improved = false;
    for (const auto& [da, db] : std::array<std::pair<double, double>, 4>{
             {{step_a, 0.0}, {-step_a, 0.0}, {0.0, step_b}, {0.0, -step_b}}}) {
      const double value = objective(best_a + da, best_b + db);
      if (value > best) {
        best = value;
        best_a += da;
        best_b += db;
        improved = true;
        break;
      }
    }
    if (!improved) {
      step_a *= 0.5;
      step_b *= 0.5;
      ++halvings;
    }
  }
  const double c0 = std::arg(objective.sum(best_a, best_b));
  return {QuadraticMethod::peak_delta_k, c0, best_a, best_b};
}

}  // namespace

std::string_view to_string(Compensation mode) {
  switch (mode) {
    case Compensation::none: return "none";
    case Compensation::ideal: return "ideal";
    case Compensation::quadratic: return "quadratic";
  }
  return "none";
}

Compensation compensation_from_string(std::string_view name) {
  if (name == "none") return Compensation::none;
  if (name == "ideal") return Compensation::ideal;
  if (name == "quadratic") return Compensation::quadratic;
  throw ArgumentError("unknown compensation mode '" + std::string(name) + "' (none, ideal, quadratic)");
}

std::string_view to_string(QuadraticMethod method) {
  switch (method) {
    case QuadraticMethod::peak_delta_k: return "peak_delta_k";
    case QuadraticMethod::least_squares_delta_k: return "lsq_delta_k";
    case QuadraticMethod::least_squares_omega: return "lsq_omega";
  }
  return "peak_delta_k";
}

QuadraticMethod quadratic_method_from_string(std::string_view name) {
  if (name == "peak_delta_k") return QuadraticMethod::peak_delta_k;
  if (name == "lsq_delta_k") return QuadraticMethod::least_squares_delta_k;
  if (name == "lsq_omega") return QuadraticMethod::least_squares_omega;
  throw ArgumentError("unknown quadratic method '" + std::string(name) + "' (peak_delta_k, lsq_delta_k, lsq_omega)");
}

TwoPhotonAmplitude two_photon_amplitude(const SpectralContext& context, const Source& source, unsigned threads) {
  TwoPhotonAmplitude out{context.grid(), phase_matching(context, source, threads), {}, 0.0, Compensation::none, {}};
  const double xi = std::sqrt(context.pump().amplitude_sq());
  out.delta_k_small.resize(out.values.size());
  for (std::size_t m = 0; m < out.values.size(); ++m) {
    out.values[m] *= coupling_g(context.grid().omega(m), context.grid().idler(m), context.model()) * xi;
    out.delta_k_small[m] = context.mismatch()[m].delta_k_small;
  }
  if (const auto* stack = std::get_if<StackSource>(&source)) {
    out.crystal_length = stack->stack.length();
  } else if (const auto* chirped = std::get_if<ChirpedSource>(&source)) {
    out.crystal_length = static_cast<double>(chirped->n_domains) * chirped->l0;
  }
  return out;
}

std::vector<double> unwrapped_phase(const TwoPhotonAmplitude& amplitude, std::size_t first, std::size_t last) {
  const auto& v = amplitude.values;
  if (first > last || last >= v.size()) throw ArgumentError("unwrap range out of bounds");
  const double peak = max_abs_sq(v);
  std::vector<double> phase(last - first + 1);
  for (std::size_t m = first; m <= last; ++m) {
    if (!(std::norm(v[m]) > 1e-12 * peak)) {
      std::ostringstream msg;
      msg << "phase unwrap failed: |Phi| vanishes at sample " << m << " (lambda "
          << constants::wavelength_from_omega(amplitude.grid.omega(m)) << " m) inside the fit window";
      throw UnwrapError(msg.str());
    }
    const double raw = std::arg(v[m]);
    if (m == first) {
      phase[0] = raw;
      continue;
    }
    const double prev = phase[m - first - 1];
    phase[m - first] = prev + std::remainder(raw - prev, 2.0 * constants::pi);
  }
  return phase;
}

TwoPhotonAmplitude compensate_phase(const TwoPhotonAmplitude& amplitude, Compensation mode, QuadraticMethod method) {
  if (amplitude.compensation != Compensation::none) throw ArgumentError("amplitude is already compensated");
  TwoPhotonAmplitude out = amplitude;
  out.compensation = mode;
  if (mode == Compensation::none) return out;
  if (mode == Compensation::ideal) {
    for (auto& v : out.values) v = std::abs(v);
    return out;
  }
  out.fit = method == QuadraticMethod::peak_delta_k ? peak_fit(amplitude) : least_squares_fit(amplitude, method);
  for (std::size_t m = 0; m < out.values.size(); ++m) {
    const double x =
        method == QuadraticMethod::least_squares_omega ? amplitude.grid.offset(m) : amplitude.delta_k_small[m];
    out.values[m] *= std::polar(1.0, -(out.fit.c0 + (out.fit.c1 + out.fit.c2 * x) * x));
  }
  return out;
}

std::vector<double> delay_axis(double max_delay, double step) {
  if (!(step > 0.0) || !(max_delay >= 0.0)) throw ArgumentError("delay axis needs step > 0 and max >= 0");
  const auto k = static_cast<std::ptrdiff_t>(std::floor(max_delay / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * k + 1));
  for (std::ptrdiff_t i = -k; i <= k; ++i) out.push_back(static_cast<double>(i) * step);
  return out;
}

HomTrace hom_trace(const SpectralGrid& grid, std::span<const double> abs_f_sq, std::span<const double> delays,
                   unsigned threads) {
  const std::size_t n = grid.size();
  if (abs_f_sq.size() != n) throw ArgumentError("|F|^2 curve does not match the grid");
  std::vector<double> offsets(n), weighted(n);
  for (std::size_t m = 0; m < n; ++m) {
    offsets[m] = grid.offset(m);
    const double w = (m == 0 || m + 1 == n) ? 0.5 : 1.0;
    weighted[m] = w * grid.step() * abs_f_sq[m];
  }
  CompensatedSum r0;
  for (double v : weighted) r0.add(v);
  HomTrace trace{{delays.begin(), delays.end()}, std::vector<double>(delays.size()), r0.value()};
  if (!(trace.baseline > 0.0)) throw NumericalDomainError("HOM baseline R0 is zero");
  parallel_for(delays.size(), threads, [&](std::size_t i) {
    std::vector<double> c(n);
    detail::cosines(2.0 * delays[i], offsets, c);
    CompensatedSum s;
    for (std::size_t m = 0; m < n; ++m) s.add(weighted[m] * c[m]);
    trace.rates[i] = 1.0 - s.value() / trace.baseline;
  });
  return trace;
}

double dip_fwhm(const HomTrace& trace) {
  std::vector<double> depth(trace.rates.size());
  for (std::size_t i = 0; i < depth.size(); ++i) depth[i] = 1.0 - trace.rates[i];
  return outer_fwhm(trace.delays, depth);
}

SumFrequencyTrace sum_frequency_trace(const TwoPhotonAmplitude& amplitude, std::size_t padding) {
  const std::size_t n = amplitude.grid.size();
  if (amplitude.values.size() != n) throw ArgumentError("amplitude does not match its grid");
  if (padding == 0) throw ArgumentError("padding must be >= 1");
  const std::size_t size = next_power_of_two(n * padding);
  std::vector<cplx> data(size, cplx(0.0, 0.0));
  std::copy(amplitude.values.begin(), amplitude.values.end(), data.begin());
  forward_fft(data);

  const double d_omega = amplitude.grid.step();
  const double d_tau = 2.0 * constants::pi / (static_cast<double>(size) * d_omega);
  SumFrequencyTrace trace;
  trace.compensation = amplitude.compensation;
  trace.delay_step = d_tau;
  trace.delays.resize(size);
  trace.intensity.resize(size);
  const auto half = static_cast<std::ptrdiff_t>(size / 2);
  CompensatedSum area;
  for (std::ptrdiff_t k = -half; k < half; ++k) {
    const auto i = static_cast<std::size_t>(k + half);
    const auto bin = static_cast<std::size_t>((k + static_cast<std::ptrdiff_t>(size)) % static_cast<std::ptrdiff_t>(size));
    trace.delays[i] = static_cast<double>(k) * d_tau;
    trace.intensity[i] = std::norm(data[bin]) * d_omega * d_omega;
    area.add(trace.intensity[i]);
  }
  trace.unnormalized_area = area.value() * d_tau;
  if (!(trace.unnormalized_area > 0.0)) throw NumericalDomainError("sum-frequency trace is identically zero");
  for (auto& v : trace.intensity) v /= trace.unnormalized_area;
  return trace;
}

SumFrequencyTrace crop(const SumFrequencyTrace& trace, double window) {
  SumFrequencyTrace out;
  out.compensation = trace.compensation;
  out.unnormalized_area = trace.unnormalized_area;
  out.delay_step = trace.delay_step;
  for (std::size_t i = 0; i < trace.delays.size(); ++i) {
    if (std::abs(trace.delays[i]) <= window) {
      out.delays.push_back(trace.delays[i]);
      out.intensity.push_back(trace.intensity[i]);
    }
  }
  return out;
}

double outer_fwhm(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || y.empty()) throw ArgumentError("outer_fwhm needs equal, non-empty x and y");
  const auto peak = std::max_element(y.begin(), y.end());
  if (!(*peak > 0.0)) throw NumericalDomainError("FWHM undefined: curve has no positive maximum");
  const double half = 0.5 * *peak;
  std::size_t lo = 0;
  while (y[lo] < half) ++lo;
  std::size_t hi = y.size() - 1;
  while (y[hi] < half) --hi;
  if (lo == 0 || hi == y.size() - 1) throw NumericalDomainError("FWHM undefined: curve above half maximum at an end");
  const auto crossing = [&](std::size_t below, std::size_t above) {
    const double t = (half - y[below]) / (y[above] - y[below]);
    return x[below] + t * (x[above] - x[below]);
  };
  return crossing(hi + 1, hi) - crossing(lo - 1, lo);
}

}  // namespace spdc
