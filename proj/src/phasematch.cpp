#include "spdc/phasematch.hpp"

#include <cmath>

#include "spdc/constants.hpp"
#include "spdc/detail/phasor_kernel.hpp"
#include "spdc/errors.hpp"
#include "spdc/summation.hpp"

namespace spdc {
namespace {

using cplx = std::complex<double>;

// 1 - exp(x + i y), accurate when both x and y are small.
cplx one_minus_exp(double x, double y) {
  const double s = std::sin(0.5 * y);
  const double re = 2.0 * s * s - std::cos(y) * std::expm1(x);
  const double im = -std::exp(x) * std::sin(y);
  return {re, im};
}

void require_increasing(std::span<const double> boundaries) {
  if (boundaries.size() < 2) throw ArgumentError("need at least one domain");
  for (std::size_t n = 1; n < boundaries.size(); ++n) {
    if (!(boundaries[n] > boundaries[n - 1])) {
      throw ArgumentError("boundaries not strictly increasing at index " + std::to_string(n));
    }
  }
}

}  // namespace

DomainGeometry::DomainGeometry(std::span<const double> boundaries) {
  require_increasing(boundaries);
  const std::size_t n = boundaries.size() - 1;
  mid_.resize(n);
  half_.resize(n);
  sign_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    mid_[i] = 0.5 * (boundaries[i] + boundaries[i + 1]);
    half_[i] = 0.5 * (boundaries[i + 1] - boundaries[i]);
    sign_[i] = (i % 2 == 0) ? 1.0 : -1.0;
  }
}

cplx DomainGeometry::evaluate_with(double delta_k, std::span<double> re, std::span<double> im) const {
  CompensatedComplexSum sum;
  if (delta_k == 0.0) {
    for (std::size_t i = 0; i < mid_.size(); ++i) sum.add(sign_[i] * 2.0 * half_[i], 0.0);
    return sum.value();
  }
  detail::domain_integrals(delta_k, mid_, half_, sign_, re, im);
  for (std::size_t i = 0; i < mid_.size(); ++i) sum.add(re[i], im[i]);
  return sum.value();
}

cplx DomainGeometry::evaluate(double delta_k) const {
  std::vector<double> re(mid_.size()), im(mid_.size());
  return evaluate_with(delta_k, re, im);
}

void DomainGeometry::evaluate(std::span<const double> delta_k, std::span<cplx> out) const {
  if (out.size() != delta_k.size()) throw ArgumentError("output span size mismatch");
  std::vector<double> re(mid_.size()), im(mid_.size());
  for (std::size_t i = 0; i < delta_k.size(); ++i) out[i] = evaluate_with(delta_k[i], re, im);
}

std::vector<double> DomainGeometry::abs_sq(std::span<const double> delta_k) const {
  std::vector<cplx> values(delta_k.size());
  evaluate(delta_k, values);
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = std::norm(values[i]);
  return out;
}

cplx f_exact(std::span<const double> boundaries, double delta_k) {
  return DomainGeometry(boundaries).evaluate(delta_k);
}

PhaseMatchSample f_exact(const DomainStack& stack, const PhaseMismatch& mismatch) {
  const cplx value = f_exact(stack.boundaries(), mismatch.delta_k);
  return {value, std::norm(value), mismatch};
}

cplx f_boundary_sum(std::span<const double> boundaries, double delta_k, double delta_k0) {
  require_increasing(boundaries);
  if (!(std::abs(delta_k) >= 1e-3 * std::abs(delta_k0))) {
    throw NumericalDomainError("boundary-sum form needs |dk| >= 1e-3 dk0");
  }
  std::vector<double> re(boundaries.size()), im(boundaries.size());
  detail::unit_phasors(delta_k, boundaries, re, im);
  CompensatedComplexSum sum;
  for (std::size_t j = 0; j < boundaries.size(); ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum.add(sign * re[j], sign * im[j]);
  }
  return cplx(0.0, 2.0 / delta_k) * sum.value();
}

PhaseMatchSample f_boundary_sum(const DomainStack& stack, const PhaseMismatch& mismatch) {
  const cplx value = f_boundary_sum(stack.boundaries(), mismatch.delta_k, mismatch.delta_k0);
  return {value, std::norm(value), mismatch};
}

double f_avg_sq(const PhaseMismatch& mismatch, std::size_t n_domains, double l0, double sigma) {
  if (n_domains == 0 || !(l0 > 0.0)) throw ArgumentError("f_avg_sq needs n_domains >= 1 and l0 > 0");
  if (!(sigma >= 0.0)) throw ArgumentError("sigma must be >= 0");
  if (sigma == 0.0) return std::norm(f_exact(build_periodic(n_domains, l0).boundaries(), mismatch.delta_k));

  const double dk = mismatch.delta_k;
  const double x = -0.25 * (sigma * dk) * (sigma * dk);
  const double y = mismatch.delta_k_small * l0;
  const double count = static_cast<double>(n_domains) + 1.0;

  const cplx h = std::exp(cplx(x, y));
  const cplx one_minus_h = one_minus_exp(x, y);
  const double denom = std::norm(one_minus_h);
  if (!(denom > 0.0)) throw NumericalDomainError("f_avg_sq singular: H = 1 (dk = 0)");
  const double diagonal = count * (-std::expm1(2.0 * x)) / denom;
  const cplx geometric = h * one_minus_exp(count * x, count * y) / (one_minus_h * one_minus_h);
  return 4.0 / (dk * dk) * (diagonal - 2.0 * geometric.real());
}

PhaseMatchSample f_chirped(const PhaseMismatch& mismatch, std::size_t n_domains, double l0, double zeta_prime) {
  if (n_domains == 0 || !(l0 > 0.0)) throw ArgumentError("f_chirped needs n_domains >= 1 and l0 > 0");
  if (!(zeta_prime > 0.0)) throw ArgumentError("f_chirped needs zeta' > 0; use the periodic path for zeta = 0");
  const double dk = mismatch.delta_k;
  if (!(dk > 0.0)) throw NumericalDomainError("f_chirped needs dk > 0");
  const double ddk = mismatch.delta_k_small;
  const double n = static_cast<double>(n_domains);
  const double root = std::sqrt(dk * zeta_prime);
  const cplx sqrt_minus_i = std::polar(1.0, -0.25 * constants::pi);
  const auto arg = [&](double x) { return sqrt_minus_i * (root * l0 * x + ddk / (2.0 * root)); };
  const cplx bracket = cerf(arg(0.5 * n)) - cerf(arg(-0.5 * n));
  const double phase = 0.5 * ddk * n * l0 - ddk * ddk / (4.0 * dk * zeta_prime);
  const cplx value = cplx(0.0, 2.0 / dk) * std::polar(1.0, phase) * std::sqrt(constants::pi) /
                     (2.0 * sqrt_minus_i * root * l0) * bracket;
  return {value, std::norm(value), mismatch};
}

}  // namespace spdc
