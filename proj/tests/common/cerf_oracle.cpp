#include "cerf_oracle.hpp"

#include <mpfr.h>

#include <cmath>

namespace spdc_test {
namespace {

struct Mp {
  mpfr_t v;
  explicit Mp(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Mp() { mpfr_clear(v); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
};

}  // namespace

std::complex<double> cerf_series_oracle(std::complex<double> z) {
  const double mag2 = std::norm(z);
  const auto prec = static_cast<mpfr_prec_t>(128 + 3.0 * mag2);
  Mp zr(prec), zi(prec), wr(prec), wi(prec), tr(prec), ti(prec), sr(prec), si(prec), a(prec), b(prec), c(prec);
  mpfr_set_d(zr.v, z.real(), MPFR_RNDN);
  mpfr_set_d(zi.v, z.imag(), MPFR_RNDN);
  // w = -z^2
  mpfr_mul(a.v, zr.v, zr.v, MPFR_RNDN);
  mpfr_mul(b.v, zi.v, zi.v, MPFR_RNDN);
  mpfr_sub(wr.v, b.v, a.v, MPFR_RNDN);
  mpfr_mul(wi.v, zr.v, zi.v, MPFR_RNDN);
  mpfr_mul_si(wi.v, wi.v, -2, MPFR_RNDN);
  // term t_n = (-z^2)^n z / n!, sum s = sum t_n / (2n + 1)
  mpfr_set(tr.v, zr.v, MPFR_RNDN);
  mpfr_set(ti.v, zi.v, MPFR_RNDN);
  mpfr_set(sr.v, zr.v, MPFR_RNDN);
  mpfr_set(si.v, zi.v, MPFR_RNDN);
  const long terms = static_cast<long>(10.0 * mag2) + 200;
  for (long n = 1; n < terms; ++n) {
    // t *= w / n
    mpfr_mul(a.v, tr.v, wr.v, MPFR_RNDN);
    mpfr_mul(b.v, ti.v, wi.v, MPFR_RNDN);
    mpfr_sub(c.v, a.v, b.v, MPFR_RNDN);
    mpfr_mul(a.v, tr.v, wi.v, MPFR_RNDN);
    mpfr_mul(b.v, ti.v, wr.v, MPFR_RNDN);
    mpfr_add(ti.v, a.v, b.v, MPFR_RNDN);
    mpfr_set(tr.v, c.v, MPFR_RNDN);
    mpfr_div_si(tr.v, tr.v, n, MPFR_RNDN);
    mpfr_div_si(ti.v, ti.v, n, MPFR_RNDN);
    mpfr_div_si(a.v, tr.v, 2 * n + 1, MPFR_RNDN);
    mpfr_add(sr.v, sr.v, a.v, MPFR_RNDN);
    mpfr_div_si(a.v, ti.v, 2 * n + 1, MPFR_RNDN);
    mpfr_add(si.v, si.v, a.v, MPFR_RNDN);
  }
  // 2 / sqrt(pi)
  mpfr_const_pi(a.v, MPFR_RNDN);
  mpfr_sqrt(a.v, a.v, MPFR_RNDN);
  mpfr_ui_div(a.v, 2, a.v, MPFR_RNDN);
  mpfr_mul(sr.v, sr.v, a.v, MPFR_RNDN);
  mpfr_mul(si.v, si.v, a.v, MPFR_RNDN);
  return {mpfr_get_d(sr.v, MPFR_RNDN), mpfr_get_d(si.v, MPFR_RNDN)};
}

}  // namespace spdc_test
