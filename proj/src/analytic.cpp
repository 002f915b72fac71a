#include "spinrtn/analytic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spinrtn/pdf.hpp"
#include "spinrtn/special.hpp"

namespace spinrtn {

namespace {

void require(bool ok, const char* field, const char* rule, double value) {
  if (ok) return;
  std::ostringstream msg;
  msg << field << " " << rule << " (got " << value << ")";
  throw std::invalid_argument(msg.str());
}

void check_time(double t) { require(std::isfinite(t) && t >= 0.0, "t", "must be >= 0", t); }
void check_alpha(double alpha) { require(std::isfinite(alpha) && alpha >= 0.0, "alpha", "must be >= 0", alpha); }
void check_lambda(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda", "must be > 0", lambda);
}

bool needs_lambda(Regime r) { return r != Regime::no_fluct && r != Regime::slow; }

}  // namespace

const char* to_string(Regime regime) {
  switch (regime) {
    case Regime::no_fluct: return "no_fluct";
    case Regime::ge1: return "ge1";
    case Regime::slow: return "slow";
    case Regime::fast: return "fast";
    case Regime::exact_full: return "exact_full";
    case Regime::approx_full: return "approx_full";
  }
  return "unknown";
}

double kernel_zero(double x) { return std::cos(x); }

double kernel_slow(double x) { return sinc(x); }

double kernel_fast(double x, double y) {
  if (x == 0.0) return 1.0;
  return std::exp(-x * x / (2.0 * y));
}

double kernel_ge1(double x, double y) {
  x = std::abs(x);
  if (y < 1e-100) return sinc(x);
  const double d = std::expm1(-y);
  // 1 / sinh^2(y/2) without the e^{-y} factor.
  const double inv = 4.0 / (d * d);
  if (x < y) {
    // [sinh^2(w/2) + sin^2(x/2)] / sinh^2(y/2)
    const double w = std::sqrt((y - x) * (y + x));
    const double r = std::expm1(-w) / d;
    const double sh = std::sin(0.5 * x);
    return std::exp(-x * x / (w + y)) * r * r + sh * sh * inv * std::exp(-y);
  }
  // -sin((A+x)/2) sin((A-x)/2) / sinh^2(y/2), A - x = -y^2 / (A + x)
  const double a = std::sqrt((x - y) * (x + y));
  const double sum = a + x;
  return std::sin(0.5 * sum) * std::sin(y * y / (2.0 * sum)) * inv * std::exp(-y);
}

double kernel_exact(double x, double y) {
  return std::exp(-y) * std::cos(x) + poisson_tail_gt0(y) * kernel_ge1(x, y);
}

double kernel_approx(double x, double y) {
  return poisson_weight(0, y) * std::cos(x) + poisson_weight(1, y) * sinc(x) +
         poisson_tail_gt1(y) * kernel_fast(x, y);
}

double regime_kernel(Regime regime, double x, double y) {
  switch (regime) {
    case Regime::no_fluct: return kernel_zero(x);
    case Regime::ge1: return kernel_ge1(x, y);
    case Regime::slow: return kernel_slow(x);
    case Regime::fast: return kernel_fast(x, y);
    case Regime::exact_full: return kernel_exact(x, y);
    case Regime::approx_full: return kernel_approx(x, y);
  }
  throw std::invalid_argument("unknown regime");
}

SuperOperator q_unitary(double j0, double t) {
  require(std::isfinite(j0), "j0", "must be finite", j0);
  check_time(t);
  return apply_scalar_kernel([&](double s) { return std::exp(Complex(0.0, -j0 * s * t)); });
}

SuperOperator qnu(Regime regime, double alpha, double lambda, double t) {
  check_alpha(alpha);
  check_time(t);
  if (needs_lambda(regime)) check_lambda(lambda);
  if (regime == Regime::fast) {
    // Written in t rather than (x, y) so that t = 0 needs no special case.
    const double rate = alpha * alpha * t / (2.0 * lambda);
    return apply_scalar_kernel([&](double s) { return std::exp(-rate * s * s); });
  }
  const double y = needs_lambda(regime) ? lambda * t : 0.0;
  return apply_scalar_kernel([&](double s) { return regime_kernel(regime, alpha * s * t, y); });
}

SuperOperator qnu_zero(double alpha, double t) { return qnu(Regime::no_fluct, alpha, 1.0, t); }
SuperOperator qnu_ge1(double alpha, double lambda, double t) { return qnu(Regime::ge1, alpha, lambda, t); }
SuperOperator qnu_slow(double alpha, double t) { return qnu(Regime::slow, alpha, 1.0, t); }
SuperOperator qnu_fast(double alpha, double lambda, double t) { return qnu(Regime::fast, alpha, lambda, t); }
SuperOperator qnu_exact(double alpha, double lambda, double t) {
  return qnu(Regime::exact_full, alpha, lambda, t);
}
SuperOperator qnu_approx(double alpha, double lambda, double t) {
  return qnu(Regime::approx_full, alpha, lambda, t);
}

double q_nu_value(Regime regime, double alpha, double lambda, double t) {
  check_alpha(alpha);
  check_time(t);
  if (needs_lambda(regime)) check_lambda(lambda);
  if (regime == Regime::fast) return std::exp(-16.0 * alpha * alpha * t / (2.0 * lambda));
  return regime_kernel(regime, 4.0 * alpha * t, needs_lambda(regime) ? lambda * t : 0.0);
}

SuperOperator q_full(const FluctuatorParams& params, double t, Form form) {
  params.validate();
  check_time(t);
  const Regime regime = form == Form::exact ? Regime::exact_full : Regime::approx_full;
  const double y = params.lambda * t;
  return apply_scalar_kernel([&](double s) {
    return std::exp(Complex(0.0, -params.j0 * s * t)) * regime_kernel(regime, params.alpha * s * t, y);
  });
}

SuperOperator lindblad_superoperator(double alpha, double lambda) {
  check_alpha(alpha);
  check_lambda(lambda);
  return lindblad_dissipator(heisenberg_hamiltonian() * Complex(alpha / std::sqrt(lambda)));
}

}  // namespace spinrtn
