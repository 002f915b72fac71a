#include "spinrtn/special.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace spinrtn {

namespace {

// Below this the ascending series is used; above it the Hankel asymptotic
// series, whose smallest term is ~exp(-2x), is accurate to rounding.
constexpr double kSeriesLimit = 30.0;

void check_argument(double x) {
  if (!(x >= 0.0) || std::isinf(x)) {
    std::ostringstream msg;
    msg << "bessel argument must be finite and >= 0 (got " << x << ")";
    throw std::domain_error(msg.str());
  }
}

// I1(x)/x = 1/2 sum_k (x^2/4)^k / (k! (k+1)!)
double i1_over_x_series(double x) {
  const double q = 0.25 * x * x;
  double term = 0.5;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k + 1));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// sqrt(2 pi x) exp(-x) I1(x) = sum_k (-1)^k prod_j (4 - (2j-1)^2) / (k! (8x)^k)
double i1_asymptotic_factor(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = -term * (4.0 - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double bessel_i1(double x) {
  check_argument(x);
  if (x > 700.0) {
    std::ostringstream msg;
    msg << "bessel_i1 argument above overflow guard 700 (got " << x << ")";
    throw std::domain_error(msg.str());
  }
  if (x < kSeriesLimit) return x * i1_over_x_series(x);
  return std::exp(x) * i1_asymptotic_factor(x) / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_i1_scaled(double x) {
  check_argument(x);
  if (x < kSeriesLimit) return std::exp(-x) * x * i1_over_x_series(x);
  return i1_asymptotic_factor(x) / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_i1_over_x_scaled(double x) {
  check_argument(x);
  if (x < kSeriesLimit) return std::exp(-x) * i1_over_x_series(x);
  return bessel_i1_scaled(x) / x;
}

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

}  // namespace spinrtn
