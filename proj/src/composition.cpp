#include "spinrtn/composition.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spinrtn/analytic.hpp"
#include "spinrtn/quadrature.hpp"

namespace spinrtn {

namespace {

void check_time(double t) {
  if (!(std::isfinite(t) && t >= 0.0)) {
    std::ostringstream msg;
    msg << "t must be >= 0 (got " << t << ")";
    throw std::invalid_argument(msg.str());
  }
}

void check_n(double n) {
  if (!(std::isfinite(n) && n >= 0.0)) throw std::invalid_argument("n_fluctuators must be >= 0");
}

// ln of the exact kernel on the s = 4 eigenspace; the s = -4 value is the
// same and s = 0 is ln 1 = 0.
double log_kernel(double alpha, double lambda, double t) {
  const double k = kernel_exact(4.0 * alpha * t, lambda * t);
  if (!(k > 0.0)) {
    std::ostringstream msg;
    msg << "non-unitary kernel is " << k << " <= 0 on sigma_h eigenvalue 4 (and -4) at alpha = " << alpha
        << ", lambda = " << lambda << ", t = " << t << "; its logarithm is undefined";
    throw std::domain_error(msg.str());
  }
  return std::log(k);
}

SuperOperator from_exponent(double j0, double t, double exponent) {
  const double k = std::exp(exponent);
  return apply_scalar_kernel([&](double s) {
    return std::exp(Complex(0.0, -j0 * s * t)) * (s == 0.0 ? 1.0 : k);
  });
}

}  // namespace

SuperOperator product_fluctuators(const std::vector<FluctuatorParams>& fluctuators, double t) {
  if (fluctuators.empty()) throw std::invalid_argument("at least one fluctuator is required");
  check_time(t);
  const double j0 = fluctuators.front().j0;
  double k = 1.0;
  for (const auto& f : fluctuators) {
    f.validate();
    if (f.j0 != j0) throw std::invalid_argument("all fluctuators must share j0 (the unitary factor appears once)");
    k *= kernel_exact(4.0 * f.alpha * t, f.lambda * t);
  }
  return apply_scalar_kernel([&](double s) {
    return std::exp(Complex(0.0, -j0 * s * t)) * (s == 0.0 ? 1.0 : k);
  });
}

void DiscreteSpectrum::validate() const {
  check_n(n_fluctuators);
  if (components.empty()) throw std::invalid_argument("spectrum has no components");
  double total = 0.0;
  for (const auto& c : components) {
    FluctuatorParams{0.0, c.alpha, c.lambda}.validate();
    if (!(std::isfinite(c.weight) && c.weight >= 0.0)) throw std::invalid_argument("weights must be >= 0");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "weights must sum to 1 (got " << total << ")";
    throw std::invalid_argument(msg.str());
  }
}

SuperOperator weighted_product(const DiscreteSpectrum& spectrum, double j0, double t) {
  spectrum.validate();
  check_time(t);
  if (!std::isfinite(j0)) throw std::invalid_argument("j0 must be finite");
  double exponent = 0.0;
  for (const auto& c : spectrum.components) {
    if (c.weight == 0.0) continue;
    exponent += c.weight * log_kernel(c.alpha, c.lambda, t);
  }
  return from_exponent(j0, t, spectrum.n_fluctuators * exponent);
}

void ContinuousSpectrum::validate() const {
  check_n(n_fluctuators);
  if (!(std::isfinite(lambda_min) && lambda_min > 0.0)) throw std::invalid_argument("lambda_min must be > 0");
  if (lambda_law != LambdaLaw::point && !(std::isfinite(lambda_max) && lambda_max >= lambda_min))
    throw std::invalid_argument("lambda_max must be >= lambda_min");
  switch (alpha_law) {
    case AlphaLaw::constant:
      if (!(std::isfinite(alpha_min) && alpha_min >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
      break;
    case AlphaLaw::uniform:
      if (!(std::isfinite(alpha_min) && alpha_min >= 0.0)) throw std::invalid_argument("alpha_min must be >= 0");
      if (!(std::isfinite(alpha_max) && alpha_max >= alpha_min))
        throw std::invalid_argument("alpha_max must be >= alpha_min");
      break;
    case AlphaLaw::tabulated: {
      if (alpha_values.empty() || alpha_values.size() != alpha_weights.size())
        throw std::invalid_argument("alpha table needs matching, non-empty values and weights");
      double total = 0.0;
      for (std::size_t i = 0; i < alpha_values.size(); ++i) {
        if (!(std::isfinite(alpha_values[i]) && alpha_values[i] >= 0.0))
          throw std::invalid_argument("tabulated alpha must be >= 0");
        if (!(std::isfinite(alpha_weights[i]) && alpha_weights[i] >= 0.0))
          throw std::invalid_argument("tabulated alpha weights must be >= 0");
        total += alpha_weights[i];
      }
      if (std::abs(total - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "tabulated alpha weights must sum to 1 (got " << total << ")";
        throw std::invalid_argument(msg.str());
      }
      break;
    }
  }
}

double ContinuousSpectrum::mean_inverse_lambda() const {
  if (lambda_law == LambdaLaw::point || lambda_max == lambda_min) return 1.0 / lambda_min;
  if (lambda_law == LambdaLaw::uniform) return std::log(lambda_max / lambda_min) / (lambda_max - lambda_min);
  return (1.0 / lambda_min - 1.0 / lambda_max) / std::log(lambda_max / lambda_min);
}

double ContinuousSpectrum::mean_alpha_squared() const {
  switch (alpha_law) {
    case AlphaLaw::constant: return alpha_min * alpha_min;
    case AlphaLaw::uniform:
      return (alpha_min * alpha_min + alpha_min * alpha_max + alpha_max * alpha_max) / 3.0;
    case AlphaLaw::tabulated: {
      double acc = 0.0;
      for (std::size_t i = 0; i < alpha_values.size(); ++i) acc += alpha_weights[i] * alpha_values[i] * alpha_values[i];
      return acc;
    }
  }
  return 0.0;
}

SuperOperator spectral_compose(const ContinuousSpectrum& spectrum, double j0, double t,
                               const SpectralComposeOptions& options) {
  spectrum.validate();
  check_time(t);
  if (!std::isfinite(j0)) throw std::invalid_argument("j0 must be finite");
  const auto& s = spectrum;
  const bool alpha_spread = s.alpha_law == AlphaLaw::uniform && s.alpha_max > s.alpha_min;
  const bool lambda_spread = s.lambda_law != LambdaLaw::point && s.lambda_max > s.lambda_min;

  // Positivity on a grid including the support corners, before integrating.
  {
    const int grid = 33;
    for (int i = 0; i < grid; ++i) {
      const double u = static_cast<double>(i) / (grid - 1);
      double lambda = s.lambda_min;
      if (lambda_spread)
        lambda = s.lambda_law == LambdaLaw::uniform ? s.lambda_min + u * (s.lambda_max - s.lambda_min)
                                                    : s.lambda_min * std::pow(s.lambda_max / s.lambda_min, u);
      if (s.alpha_law == AlphaLaw::tabulated) {
        for (double a : s.alpha_values) log_kernel(a, lambda, t);
      } else {
        for (int j = 0; j < grid; ++j) {
          const double v = static_cast<double>(j) / (grid - 1);
          log_kernel(alpha_spread ? s.alpha_min + v * (s.alpha_max - s.alpha_min) : s.alpha_min, lambda, t);
        }
      }
    }
  }

  auto alpha_average = [&](double lambda) {
    switch (s.alpha_law) {
      case AlphaLaw::constant: return log_kernel(s.alpha_min, lambda, t);
      case AlphaLaw::uniform: {
        if (!alpha_spread) return log_kernel(s.alpha_min, lambda, t);
        const double width = s.alpha_max - s.alpha_min;
        return integrate_adaptive([&](double a) { return log_kernel(a, lambda, t); }, s.alpha_min, s.alpha_max,
                                  options.abs_tol * width)
                   .value /
               width;
      }
      case AlphaLaw::tabulated: {
        double acc = 0.0;
        for (std::size_t i = 0; i < s.alpha_values.size(); ++i)
          if (s.alpha_weights[i] > 0.0) acc += s.alpha_weights[i] * log_kernel(s.alpha_values[i], lambda, t);
        return acc;
      }
    }
    return 0.0;
  };

  double exponent = 0.0;
  if (!lambda_spread) {
    exponent = alpha_average(s.lambda_min);
  } else if (s.lambda_law == LambdaLaw::uniform) {
    const double width = s.lambda_max - s.lambda_min;
    exponent = integrate_adaptive(alpha_average, s.lambda_min, s.lambda_max, options.abs_tol * width).value / width;
  } else {
    const double lo = std::log(s.lambda_min);
    const double hi = std::log(s.lambda_max);
    exponent = integrate_adaptive([&](double u) { return alpha_average(std::exp(u)); }, lo, hi,
                                  options.abs_tol * (hi - lo))
                   .value /
               (hi - lo);
  }
  return from_exponent(j0, t, s.n_fluctuators * exponent);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
}

DiscreteSpectrum discretize(const ContinuousSpectrum& spectrum, int points) {
  spectrum.validate();
  const auto& s = spectrum;
  std::vector<double> x;
  std::vector<double> w;
  gauss_legendre(points, x, w);

  std::vector<std::pair<double, double>> lambdas;
  if (s.lambda_law == LambdaLaw::point || s.lambda_max == s.lambda_min) {
    lambdas.push_back({s.lambda_min, 1.0});
  } else {
    const bool log_axis = s.lambda_law == LambdaLaw::log_uniform;
    const double lo = log_axis ? std::log(s.lambda_min) : s.lambda_min;
    const double hi = log_axis ? std::log(s.lambda_max) : s.lambda_max;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x[i];
      lambdas.push_back({log_axis ? std::exp(u) : u, 0.5 * w[i]});
    }
  }

  std::vector<std::pair<double, double>> alphas;
  switch (s.alpha_law) {
    case AlphaLaw::constant: alphas.push_back({s.alpha_min, 1.0}); break;
    case AlphaLaw::uniform:
      if (s.alpha_max == s.alpha_min) {
        alphas.push_back({s.alpha_min, 1.0});
      } else {
        for (std::size_t i = 0; i < x.size(); ++i)
          alphas.push_back({0.5 * (s.alpha_min + s.alpha_max) + 0.5 * (s.alpha_max - s.alpha_min) * x[i], 0.5 * w[i]});
      }
      break;
    case AlphaLaw::tabulated:
      for (std::size_t i = 0; i < s.alpha_values.size(); ++i) alphas.push_back({s.alpha_values[i], s.alpha_weights[i]});
      break;
  }

  DiscreteSpectrum out;
  out.n_fluctuators = s.n_fluctuators;
  double total = 0.0;
  for (const auto& [lam, wl] : lambdas)
    for (const auto& [a, wa] : alphas) {
      out.components.push_back({a, lam, wl * wa});
      total += wl * wa;
    }
  // Remove rounding drift in the rule weights so validate() accepts the result.
  for (auto& c : out.components) c.weight /= total;
  return out;
}

}  // namespace spinrtn
