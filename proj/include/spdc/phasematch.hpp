#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "spdc/dispersion.hpp"
#include "spdc/structure.hpp"

namespace spdc {

/// One evaluation of the phase-matching function F (units of length).
/// Ensemble paths have no phase and leave `value` empty.
struct PhaseMatchSample {
  std::optional<std::complex<double>> value;
  double abs_sq = 0.0;  // m^2
  PhaseMismatch at;
};

/// Per-domain geometry of a boundary list, prepared for evaluating
///
///     F(dk) = sum_n (-1)^(n-1) int_{z_{n-1}}^{z_n} exp(i dk z) dz
///
/// at many mismatches. Each domain integral is taken in closed form as
/// sign * (2 sin(dk l_n / 2) / dk) * exp(i dk m_n) (midpoint m_n, length l_n),
/// which is exact, has no cancellation as dk -> 0 and tends to sign * l_n at
/// dk = 0. Terms are added in index order with compensated summation, so a
/// result depends only on (boundaries, dk).
class DomainGeometry {
 public:
  explicit DomainGeometry(std::span<const double> boundaries);

  std::complex<double> evaluate(double delta_k) const;
  /// out[i] = F(delta_k[i]).
  void evaluate(std::span<const double> delta_k, std::span<std::complex<double>> out) const;
  std::vector<double> abs_sq(std::span<const double> delta_k) const;

  std::size_t domain_count() const { return mid_.size(); }

 private:
  std::complex<double> evaluate_with(double delta_k, std::span<double> re, std::span<double> im) const;

  std::vector<double> mid_;
  std::vector<double> half_;
  std::vector<double> sign_;
};

/// Exact phase-matching function of a concrete stack.
PhaseMatchSample f_exact(const DomainStack& stack, const PhaseMismatch& mismatch);
/// Same, for an arbitrary increasing boundary list (need not start at 0).
std::complex<double> f_exact(std::span<const double> boundaries, double delta_k);

/// Boundary-sum approximation (2i/dk) sum_j (-1)^j exp(i dk z_j), accurate for
/// many domains. Throws NumericalDomainError when |dk| < 1e-3 dk0.
PhaseMatchSample f_boundary_sum(const DomainStack& stack, const PhaseMismatch& mismatch);
std::complex<double> f_boundary_sum(std::span<const double> boundaries, double delta_k, double delta_k0);

/// Ensemble average of |F|^2 over random stacks with Gaussian declinations of
/// parameter sigma (density exp(-dl^2/sigma^2)):
///
///   4/dk^2 * { (N+1)(1-|H|^2)/|1-H|^2 - 2 Re[H (1 - H^(N+1)) / (1-H)^2] },
///   H = exp(i ddk l0) exp(-(sigma dk)^2 / 4),
///
/// where ddk = dk - dk0 and the damping uses the total mismatch dk. sigma = 0
/// is evaluated as |F|^2 of the periodic stack.
double f_avg_sq(const PhaseMismatch& mismatch, std::size_t n_domains, double l0, double sigma);

/// Closed form for a chirped crystal (z_n = n l0 + zeta' (n - N/2)^2 l0^2),
/// from replacing the boundary sum by a Fresnel-type integral:
///
///   F = (2i/dk) exp(i ddk N l0 / 2) exp(-i ddk^2 / (4 dk zeta'))
///       * sqrt(pi) / (2 sqrt(-i) sqrt(dk zeta') l0) * [erf(f(N/2)) - erf(f(-N/2))],
///   f(x) = sqrt(-i) (sqrt(dk zeta') l0 x + ddk / (2 sqrt(dk zeta'))).
///
/// Needs zeta' > 0 and dk > 0; zeta' = 0 belongs to the periodic path.
PhaseMatchSample f_chirped(const PhaseMismatch& mismatch, std::size_t n_domains, double l0, double zeta_prime);

/// Complex error function. Validated region: |Re z| < 2 with |Im z| <= 25, or
/// 2 <= |Re z| <= 1e4 with Im(z)^2 - Re(z)^2 <= 600 (this includes the whole
/// diagonal arg z = -pi/4 used by f_chirped). Maclaurin series near the
/// imaginary axis, 1 - exp(-z^2) w(iz) with a continued fraction for w
/// elsewhere. Outside the region throws NumericalDomainError.
std::complex<double> cerf(std::complex<double> z);

}  // namespace spdc
