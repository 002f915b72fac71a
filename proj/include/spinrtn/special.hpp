#pragma once

namespace spinrtn {

/// Modified Bessel function of the first kind, order one. 0 <= x <= 700.
double bessel_i1(double x);

/// exp(-x) I1(x) for x >= 0, no overflow limit.
double bessel_i1_scaled(double x);

/// exp(-x) I1(x) / x, continuous at x = 0 where it equals 1/2.
double bessel_i1_over_x_scaled(double x);

/// sin(x) / x with the removable singularity filled.
double sinc(double x);

}  // namespace spinrtn
