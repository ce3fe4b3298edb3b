#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "spdc/spectra.hpp"


namespace spdc {

enum class Compensation { none, ideal, quadratic };

std::string_view to_string(Compensation mode);
Compensation compensation_from_string(std::string_view name);

/// How the quadratic compensation picks its polynomial.
enum class QuadraticMethod {
  /// Quadratic in delta_k (= offset from the degenerate mismatch), chosen to
  /// maximise the zero-delay sum-frequency signal. Default.
  peak_delta_k,
  /// Weighted least-squares fit of the unwrapped phase in delta_k.
  least_squares_delta_k,
  /// Weighted least-squares fit of the unwrapped phase in omega_s.
  least_squares_omega,
};

std::string_view to_string(QuadraticMethod method);
QuadraticMethod quadratic_method_from_string(std::string_view name);

/// Removed phase c0 + c1 x + c2 x^2, x = delta_k (rad/m) or omega_s offset
/// (rad/s) depending on the method.
struct PhasePolynomial {
  QuadraticMethod method = QuadraticMethod::peak_delta_k;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// Delta-collapsed two-photon amplitude Phi(omega_s) = g xi_p F on a grid.
struct TwoPhotonAmplitude {
  SpectralGrid grid;
  std::vector<std::complex<double>> values;
  std::vector<double> delta_k_small;  // rad/m, per sample
  double crystal_length = 0.0;        // m
  Compensation compensation = Compensation::none;
  PhasePolynomial fit;  // meaningful when compensation == quadratic
};

/// Throws PhaseUnavailableError for an analytic ensemble source.
TwoPhotonAmplitude two_photon_amplitude(const SpectralContext& context, const Source& source, unsigned threads = 0);

/// ideal: Phi -> |Phi|. quadratic: Phi -> Phi exp(-i p(x)) with p from
/// `method`. The least-squares methods fit over the band |Phi|^2 >= max / 2,
/// weighted by |Phi|^2, after unwrapping along ascending omega; a sample with
/// |Phi| ~ 0 inside that band throws UnwrapError. Magnitudes are unchanged.
TwoPhotonAmplitude compensate_phase(const TwoPhotonAmplitude& amplitude, Compensation mode,
                                    QuadraticMethod method = QuadraticMethod::peak_delta_k);

/// Unwrapped phase of the amplitude over samples [first, last], ascending.
std::vector<double> unwrapped_phase(const TwoPhotonAmplitude& amplitude, std::size_t first, std::size_t last);

struct HomTrace {
  std::vector<double> delays;  // s
  std::vector<double> rates;   // R_n(tau)
  double baseline = 0.0;       // R_0 = integral of <|F|^2> d omega_s, m^2 rad/s
};

/// Symmetric delay list -max..max in steps of `step` (both in s).
std::vector<double> delay_axis(double max_delay, double step);

/// R_n(tau) = 1 - (1/R_0) Re[exp(i omega_p0 tau) integral exp(-2 i omega_s tau) <|F|^2> d omega_s]
///          = 1 - (1/R_0) integral cos(2 Omega tau) <|F|^2> d Omega,
/// with R_0 the integral of <|F|^2>; trapezoidal rule on the grid.
HomTrace hom_trace(const SpectralGrid& grid, std::span<const double> abs_f_sq, std::span<const double> delays,
                   unsigned threads = 0);

/// Full width of the dip 1 - R_n at half of its maximum.
double dip_fwhm(const HomTrace& trace);

struct SumFrequencyTrace {
  std::vector<double> delays;     // s, ascending, one FFT period
  std::vector<double> intensity;  // unit area
  Compensation compensation = Compensation::none;
  double unnormalized_area = 0.0;  // integral of |X(tau)|^2 d tau before normalisation
  double delay_step = 0.0;         // s
};

/// I(tau) proportional to |X(tau)|^2, X(tau) = sum_m Phi_m exp(-i Omega_m tau) d Omega,
/// computed by FFT after zero padding to `padding` times the grid size
/// (rounded up to a power of two). Normalised to unit area over the full
/// period. By Parseval, unnormalized_area = 2 pi d Omega sum |Phi_m|^2.
SumFrequencyTrace sum_frequency_trace(const TwoPhotonAmplitude& amplitude, std::size_t padding = 16);

/// Delays within [-window, window].
SumFrequencyTrace crop(const SumFrequencyTrace& trace, double window);

/// Width between the outermost half-maximum crossings of y(x), linear
/// interpolation. Throws NumericalDomainError if y has no positive maximum or
/// stays above half maximum at an end.
double outer_fwhm(std::span<const double> x, std::span<const double> y);

}  // namespace spdc
