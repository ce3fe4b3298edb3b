#include "spdc/detail/phasor_kernel.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace spdc::detail {
namespace {

// Separate cos and sin loops: a fused loop becomes a scalar sincos call.
void cos_loop(const double* __restrict x, double* __restrict out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::cos(x[i]);
}

void sin_loop(const double* __restrict x, double* __restrict out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::sin(x[i]);
}

void scale_loop(double k, const double* __restrict x, double* __restrict out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = k * x[i];
}

}  // namespace

void domain_integrals(double k, std::span<const double> mid, std::span<const double> half,
                      std::span<const double> sign, std::span<double> re, std::span<double> im) {
  const std::size_t n = mid.size();
  thread_local std::vector<double> phase, amplitude;
  phase.resize(n);
  amplitude.resize(n);
  double* __restrict a = amplitude.data();
  const double* __restrict s = sign.data();
  double* __restrict out_re = re.data();
  double* __restrict out_im = im.data();

  scale_loop(k, half.data(), phase.data(), n);
  sin_loop(phase.data(), a, n);
  const double scale = 2.0 / k;
  for (std::size_t i = 0; i < n; ++i) a[i] *= s[i] * scale;

  scale_loop(k, mid.data(), phase.data(), n);
  cos_loop(phase.data(), out_re, n);
  sin_loop(phase.data(), out_im, n);
  for (std::size_t i = 0; i < n; ++i) {
    out_re[i] *= a[i];
    out_im[i] *= a[i];
  }
}

void unit_phasors(double k, std::span<const double> x, std::span<double> re, std::span<double> im) {
  const std::size_t n = x.size();
  thread_local std::vector<double> phase;
  phase.resize(n);
  scale_loop(k, x.data(), phase.data(), n);
  cos_loop(phase.data(), re.data(), n);
  sin_loop(phase.data(), im.data(), n);
}

void cosines(double k, std::span<const double> x, std::span<double> out) {
  const std::size_t n = x.size();
  thread_local std::vector<double> phase;
  phase.resize(n);
  scale_loop(k, x.data(), phase.data(), n);
  cos_loop(phase.data(), out.data(), n);
}

}  // namespace spdc::detail
