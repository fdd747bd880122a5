#include "offshell/bessel.hpp"

#include <cmath>
#include <utility>

namespace offshell {

namespace {

constexpr double kPi = 3.14159265358979323846;

// sum_k (-x^2/4)^k / (k! (k+order)!) * (x/2)^order
double series(double x, int order) {
  const double q = -0.25 * x * x;
  double term = (order == 0) ? 1.0 : 0.5 * x;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Returns (J0, J1) via backward recurrence normalised by J0 + 2 sum J_2k = 1.
std::pair<double, double> miller(double x) {
  int n = static_cast<int>(x) + 40;
  if (n % 2 == 1) ++n;
  double jp1 = 0.0;
  double j = 1e-300;
  double norm = 0.0;
  double j1 = 0.0;
  double j0 = 0.0;
  for (int k = n; k >= 1; --k) {
    const double jm1 = (2.0 * k / x) * j - jp1;
    jp1 = j;
    j = jm1;
    // j now holds J_{k-1}
    if (k - 1 == 1) j1 = j;
    if (k - 1 == 0) j0 = j;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      norm *= 1e-250;
      j1 *= 1e-250;
    }
  }
  norm += j0;
  return {j0 / norm, j1 / norm};
}

// Hankel expansion: J_nu(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi).
double asymptotic(double x, int order) {
  const double mu = 4.0 * order * order;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = 1e300;
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (static_cast<double>(k) * 8.0 * x);
    if (std::abs(term) > prev) break;
    prev = std::abs(term);
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = x - (0.5 * order + 0.25) * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  x = std::abs(x);
  if (x < 8.0) return series(x, 0);
  if (x < 30.0) return miller(x).first;
  return asymptotic(x, 0);
}

double bessel_j1(double x) {
  const double s = (x < 0.0) ? -1.0 : 1.0;
  x = std::abs(x);
  if (x < 8.0) return s * series(x, 1);
  if (x < 30.0) return s * miller(x).second;
  return s * asymptotic(x, 1);
}

}  // namespace offshell
