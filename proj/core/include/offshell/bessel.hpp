#pragma once

namespace offshell {

/// Bessel functions of the first kind, orders 0 and 1, for real argument.
/// Power series for |x| < 8, Miller backward recurrence up to 30, Hankel
/// asymptotic expansion beyond. Absolute accuracy is better than 1e-13.
double bessel_j0(double x);
double bessel_j1(double x);

}  // namespace offshell
