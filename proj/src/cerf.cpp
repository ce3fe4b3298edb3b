#include <cmath>
#include <complex>

#include "spdc/constants.hpp"
#include "spdc/errors.hpp"
#include "spdc/phasematch.hpp"

namespace spdc {
namespace {

using cplx = std::complex<double>;

const double two_over_sqrt_pi = 2.0 / std::sqrt(constants::pi);

// Maclaurin series. Cancellation grows like exp(2 Re(z)^2) |z|, so it is used
// only for |Re z| < 2 or |z| < 3.
cplx erf_series(cplx z) {
  const cplx minus_z2 = -z * z;
  cplx term = z;  // z^(2n+1) (-1)^n / n!
  cplx sum = z;
  const double min_terms = std::norm(z);
  for (int n = 1; n < 20000; ++n) {
    term *= minus_z2 / static_cast<double>(n);
    const cplx contribution = term / static_cast<double>(2 * n + 1);
    sum += contribution;
    if (n > min_terms && std::abs(contribution) <= 1e-17 * std::abs(sum)) break;
  }
  return two_over_sqrt_pi * sum;
}

// Faddeeva function w(zeta) for Im zeta >= 2 from the Laplace continued
// fraction, evaluated bottom-up at fixed depth.
cplx faddeeva_cf(cplx zeta) {
  constexpr int depth = 60;
  cplx r = 0.0;
  for (int k = depth; k >= 1; --k) r = (0.5 * k) / (zeta - r);
  return cplx(0.0, 1.0 / std::sqrt(constants::pi)) / (zeta - r);
}

}  // namespace

cplx cerf(cplx z) {
  const double re = std::abs(z.real());
  const double im = std::abs(z.imag());
  const bool inside = re < 2.0 ? im <= 25.0 : (re <= 1e4 && im * im - re * re <= 600.0);
  if (!inside) {
    throw NumericalDomainError(
        "cerf argument outside the validated region (|Re z| < 2 and |Im z| <= 25, or 2 <= |Re z| <= 1e4 and "
        "Im(z)^2 - Re(z)^2 <= 600)");
  }
  if (z.real() < 0.0) return -cerf(-z);
  if (z.real() < 2.0 || std::norm(z) < 9.0) return erf_series(z);
  // erf z = 1 - exp(-z^2) w(i z); Im(i z) = Re z >= 2.
  return 1.0 - std::exp(-z * z) * faddeeva_cf(cplx(-z.imag(), z.real()));
}

}  // namespace spdc
