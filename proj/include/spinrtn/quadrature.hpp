#pragma once

// Globally adaptive Gauss-Kronrod (G7/K15) quadrature. The interval with the
// largest |K15 - G7| is bisected until the summed estimate drops below the
// absolute tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinrtn {

/// Thrown when the error target is not met within the interval budget.
class QuadratureError : public std::runtime_error {
public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what + " (achieved error estimate " + std::to_string(achieved_error) + ")"),
        achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

private:
  double achieved_error_;
};

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
};

template <class T, class F>
Panel<T> gauss_kronrod_15(F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T kronrod = kKronrodWeights[7] * fc;
  T gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const T pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs(kronrod - gauss) * half};
}

}  // namespace detail

/// Integrates f over [a, b], first splitting it into `panels` equal pieces.
/// Throws QuadratureError if abs_tol is not reached within max_intervals.
template <class F>
auto integrate_adaptive(F f, double a, double b, double abs_tol, int panels = 1, int max_intervals = 20000)
    -> QuadratureResult<decltype(f(a))> {
  using T = decltype(f(a));
  if (!(b >= a)) throw std::invalid_argument("integrate_adaptive: b < a");
  QuadratureResult<T> out;
  if (a == b) return out;
  panels = std::max(panels, 1);

  std::vector<detail::Panel<T>> work;
  work.reserve(static_cast<std::size_t>(panels) * 2);
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width;
    const double hi = (k + 1 == panels) ? b : a + (k + 1) * width;
    work.push_back(detail::gauss_kronrod_15<T>(f, lo, hi));
  }

  auto total_error = [&] {
    double e = 0.0;
    for (const auto& p : work) e += p.error;
    return e;
  };

  double err = total_error();
  while (err > abs_tol) {
    if (static_cast<int>(work.size()) >= max_intervals)
      throw QuadratureError("integrate_adaptive: interval budget exhausted", err);
    auto worst = std::max_element(work.begin(), work.end(),
                                  [](const auto& l, const auto& r) { return l.error < r.error; });
    const double lo = worst->a;
    const double hi = worst->b;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi))
      throw QuadratureError("integrate_adaptive: interval cannot be bisected further", err);
    *worst = detail::gauss_kronrod_15<T>(f, lo, mid);
    work.push_back(detail::gauss_kronrod_15<T>(f, mid, hi));
    err = total_error();
  }

  // Sum in left-to-right order so the result does not depend on refinement
  // history beyond the final partition.
  std::sort(work.begin(), work.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : work) out.value += p.value;
  out.error = err;
  out.intervals = static_cast<int>(work.size());
  return out;
}

/// Integrates over consecutive sub-intervals [breaks[i], breaks[i+1]] with
/// the tolerance shared in proportion to their lengths.
template <class F>
auto integrate_piecewise(F f, const std::vector<double>& breaks, double abs_tol, double panels_per_unit = 0.0)
    -> QuadratureResult<decltype(f(0.0))> {
  using T = decltype(f(0.0));
  QuadratureResult<T> out;
  if (breaks.size() < 2) return out;
  const double span = breaks.back() - breaks.front();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double len = breaks[i + 1] - breaks[i];
    if (len <= 0.0) continue;
    const int panels = std::max(1, static_cast<int>(std::ceil(panels_per_unit * len)));
    auto part = integrate_adaptive(f, breaks[i], breaks[i + 1], abs_tol * len / span, panels);
    out.value += part.value;
    out.error += part.error;
    out.intervals += part.intervals;
  }
  return out;
}

}  // namespace spinrtn
