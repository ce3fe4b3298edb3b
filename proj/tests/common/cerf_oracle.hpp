#pragma once

#include <complex>

namespace spdc_test {

/// erf(z) by its Maclaurin series in MPFR arithmetic, with enough working
/// precision to absorb the series' cancellation, rounded to double at the end.
std::complex<double> cerf_series_oracle(std::complex<double> z);

}  // namespace spdc_test
