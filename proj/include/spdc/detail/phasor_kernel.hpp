#pragma once

#include <span>

// Vectorised trig loops. Built with -ffast-math so GCC can dispatch to libmvec;
// every caller does its summation elsewhere under strict IEEE rules.
namespace spdc::detail {

/// Per-domain integrals of sign * exp(i k z) over [mid - half, mid + half]:
///   re[n] + i im[n] = sign[n] * (2 sin(k half[n]) / k) * exp(i k mid[n]).
/// Requires k != 0.
void domain_integrals(double k, std::span<const double> mid, std::span<const double> half,
                      std::span<const double> sign, std::span<double> re, std::span<double> im);

/// re[n] + i im[n] = exp(i k x[n]).
void unit_phasors(double k, std::span<const double> x, std::span<double> re, std::span<double> im);

/// out[n] = cos(k x[n]).
void cosines(double k, std::span<const double> x, std::span<double> out);

}  // namespace spdc::detail
