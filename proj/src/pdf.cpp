#include "spinrtn/pdf.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "spinrtn/special.hpp"

namespace spinrtn {

namespace {

void require_rate(double lambda_t) {
  if (!(std::isfinite(lambda_t) && lambda_t > 0.0)) {
    std::ostringstream msg;
    msg << "lambda_t must be > 0 (got " << lambda_t << ")";
    throw std::invalid_argument(msg.str());
  }
}

void require_xi(double xi) {
  if (!(std::abs(xi) <= 1.0)) {
    std::ostringstream msg;
    msg << "xi must lie in [-1, 1] (got " << xi << ")";
    throw std::invalid_argument(msg.str());
  }
}

// 1 / sinh^2(y/2) = 4 e^{-y} / (1 - e^{-y})^2, written so that large y does
// not overflow and small y does not cancel. Callers fold e^{-y} into other
// exponentials, so this returns only 4 / expm1(-y)^2.
double inv_sinh_sq_half_unscaled(double y) {
  const double d = std::expm1(-y);
  return 4.0 / (d * d);
}

double sqrt_one_minus_sq(double xi) { return std::sqrt((1.0 - xi) * (1.0 + xi)); }

}  // namespace

double pdf_occupation(double tau, double duration, double lambda) {
  if (!(std::isfinite(duration) && duration > 0.0)) throw std::invalid_argument("duration must be > 0");
  if (!(std::isfinite(lambda) && lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (!(tau > 0.0 && tau < duration)) throw std::invalid_argument("tau must lie in (0, duration)");
  const double y = lambda * duration;
  const double z = 2.0 * lambda * std::sqrt(tau * (duration - tau));
  return 0.5 * lambda * std::sqrt(tau / (duration - tau)) * bessel_i1_scaled(z) * std::exp(z - y) *
         inv_sinh_sq_half_unscaled(y);
}

double pdf_occupation_symmetrized(double tau, double duration, double lambda) {
  return 0.5 * (pdf_occupation(tau, duration, lambda) + pdf_occupation(duration - tau, duration, lambda));
}

double omega_ge1(double xi, double lambda_t) {
  require_xi(xi);
  require_rate(lambda_t);
  const double y = lambda_t;
  const double z = y * sqrt_one_minus_sq(xi);
  // (y/4) I1(z) / (r sinh^2(y/2)) with I1(z)/r = y I1(z)/z.
  return 0.25 * y * y * bessel_i1_over_x_scaled(z) * std::exp(z - y) * inv_sinh_sq_half_unscaled(y);
}

double poisson_weight(unsigned k, double lambda_t) {
  if (!(std::isfinite(lambda_t) && lambda_t >= 0.0)) throw std::invalid_argument("lambda_t must be >= 0");
  if (k == 0) return std::exp(-lambda_t);
  if (lambda_t == 0.0) return 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(-lambda_t + kd * std::log(lambda_t) - std::lgamma(kd + 1.0));
}

double poisson_tail_gt0(double lambda_t) {
  if (!(std::isfinite(lambda_t) && lambda_t >= 0.0)) throw std::invalid_argument("lambda_t must be >= 0");
  return -std::expm1(-lambda_t);
}

double poisson_tail_gt1(double lambda_t) {
  return poisson_tail_gt0(lambda_t) - lambda_t * std::exp(-lambda_t);
}

OmegaValue omega_full(double xi, double lambda_t) {
  require_xi(xi);
  require_rate(lambda_t);
  const double y = lambda_t;
  const double z = y * sqrt_one_minus_sq(xi);
  OmegaValue out;
  // y/(e^y - 1) * I1(z)/r = y^2 I1(z)/z * e^{-y} / (1 - e^{-y})
  out.density = y * y * bessel_i1_over_x_scaled(z) * std::exp(z - y) / (-std::expm1(-y));
  out.atom_weight_pos = 0.5 * std::exp(-y);
  out.atom_weight_neg = out.atom_weight_pos;
  return out;
}

double omega_slow(double xi) {
  require_xi(xi);
  return 0.5;
}

double omega_fast(double xi, double lambda_t) {
  require_rate(lambda_t);
  if (!std::isfinite(xi)) throw std::invalid_argument("xi must be finite");
  return std::sqrt(lambda_t / (2.0 * std::numbers::pi)) * std::exp(-0.5 * lambda_t * xi * xi);
}

OmegaValue omega_approx(double xi, double lambda_t) {
  require_xi(xi);
  require_rate(lambda_t);
  OmegaValue out;
  out.density = poisson_weight(1, lambda_t) * omega_slow(xi) + poisson_tail_gt1(lambda_t) * omega_fast(xi, lambda_t);
  out.atom_weight_pos = 0.5 * poisson_weight(0, lambda_t);
  out.atom_weight_neg = out.atom_weight_pos;
  return out;
}

const char* to_string(XiKind kind) {
  switch (kind) {
    case XiKind::exact_full: return "exact_full";
    case XiKind::exact_ge1: return "exact_ge1";
    case XiKind::delta_pair: return "delta_pair";
    case XiKind::uniform_slow: return "uniform_slow";
    case XiKind::gaussian_fast: return "gaussian_fast";
    case XiKind::approx_full: return "approx_full";
  }
  return "unknown";
}

XiDistribution::XiDistribution(XiKind kind, double lambda_t) : kind_(kind), lambda_t_(lambda_t) {
  if (kind != XiKind::delta_pair && kind != XiKind::uniform_slow) require_rate(lambda_t);
}

double XiDistribution::density(double xi) const {
  const bool inside = std::abs(xi) <= 1.0;
  switch (kind_) {
    case XiKind::exact_full: return inside ? omega_full(xi, lambda_t_).density : 0.0;
    case XiKind::exact_ge1: return inside ? omega_ge1(xi, lambda_t_) : 0.0;
    case XiKind::delta_pair: return 0.0;
    case XiKind::uniform_slow: return inside ? 0.5 : 0.0;
    case XiKind::gaussian_fast: return omega_fast(xi, lambda_t_);
    case XiKind::approx_full:
      return (inside ? 0.5 * poisson_weight(1, lambda_t_) : 0.0) +
             poisson_tail_gt1(lambda_t_) * omega_fast(xi, lambda_t_);
  }
  return 0.0;
}

std::vector<Atom> XiDistribution::atoms() const {
  double w = 0.0;
  switch (kind_) {
    case XiKind::exact_full: w = 0.5 * std::exp(-lambda_t_); break;
    case XiKind::delta_pair: w = 0.5; break;
    case XiKind::approx_full: w = 0.5 * poisson_weight(0, lambda_t_); break;
    default: return {};
  }
  return {Atom{-1.0, w}, Atom{1.0, w}};
}

std::vector<double> XiDistribution::breakpoints() const {
  switch (kind_) {
    case XiKind::delta_pair: return {};
    case XiKind::exact_full:
    case XiKind::exact_ge1:
    case XiKind::uniform_slow: return {-1.0, 1.0};
    case XiKind::gaussian_fast: {
      const double cut = 12.0 / std::sqrt(lambda_t_);
      return {-cut, cut};
    }
    case XiKind::approx_full: {
      const double cut = 12.0 / std::sqrt(lambda_t_);
      if (cut <= 1.0) return {-1.0, 1.0};
      return {-cut, -1.0, 1.0, cut};
    }
  }
  return {};
}

QuadratureResult<double> XiDistribution::mass(double abs_tol) const {
  auto out = integrate_piecewise([this](double xi) { return density(xi); }, breakpoints(), abs_tol);
  for (const auto& atom : atoms()) out.value += atom.weight;
  return out;
}

double XiDistribution::leakage() const {
  const double tail = std::erfc(std::sqrt(0.5 * lambda_t_));
  switch (kind_) {
    case XiKind::gaussian_fast: return tail;
    case XiKind::approx_full: return poisson_tail_gt1(lambda_t_) * tail;
    default: return 0.0;
  }
}

}  // namespace spinrtn
