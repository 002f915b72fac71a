#pragma once

// Distributions of the mean fluctuator state xi = (t_plus - t_minus) / T of
// a symmetric telegraph process observed over a window T. Everything depends
// on the window only through the dimensionless product lambda_t = lambda T.

#include <utility>
#include <vector>

#include "spinrtn/quadrature.hpp"

namespace spinrtn {

/// Density of the time tau spent in one state, given an initial state and
/// at least one switch, normalised over (0, T).
double pdf_occupation(double tau, double duration, double lambda);

/// Average of pdf_occupation over both initial states; symmetric in tau.
double pdf_occupation_symmetrized(double tau, double duration, double lambda);

/// Density of xi given at least one switch. Even in xi and finite at
/// xi = +-1, where it equals lambda_t^2 / (8 sinh^2(lambda_t / 2)).
double omega_ge1(double xi, double lambda_t);

/// Poisson probability of exactly k switches.
double poisson_weight(unsigned k, double lambda_t);
/// 1 - p0.
double poisson_tail_gt0(double lambda_t);
/// 1 - p0 - p1.
double poisson_tail_gt1(double lambda_t);

/// A point mass of the xi distribution.
struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// Continuous density at xi plus the weights of the atoms at +1 and -1.
struct OmegaValue {
  double density = 0.0;
  double atom_weight_pos = 0.0;
  double atom_weight_neg = 0.0;
};

/// Full law: e^{-y}/2 [delta(xi-1) + delta(xi+1)] + y/(e^y - 1) I1(y sqrt(1-xi^2)) / sqrt(1-xi^2).
OmegaValue omega_full(double xi, double lambda_t);

/// Single-switch limit: uniform 1/2 on [-1, 1].
double omega_slow(double xi);

/// Many-switch limit: normal density with standard deviation 1/sqrt(lambda_t).
/// Defined on the whole real line.
double omega_fast(double xi, double lambda_t);

/// p0 * atoms + p1 * omega_slow + p_{>1} * omega_fast.
OmegaValue omega_approx(double xi, double lambda_t);

enum class XiKind { exact_full, exact_ge1, delta_pair, uniform_slow, gaussian_fast, approx_full };

const char* to_string(XiKind kind);

/// One of the xi laws as a continuous density on a support plus atoms.
class XiDistribution {
public:
  XiDistribution(XiKind kind, double lambda_t);

  XiKind kind() const noexcept { return kind_; }
  double lambda_t() const noexcept { return lambda_t_; }

  /// Continuous part; zero outside the support.
  double density(double xi) const;
  std::vector<Atom> atoms() const;

  /// Integration breakpoints covering the support of the continuous part,
  /// including every point where the density has a kink. Empty when there is
  /// no continuous part. The Gaussian component is cut at 12 standard
  /// deviations (beyond that its mass is below 1e-32).
  std::vector<double> breakpoints() const;

  /// Continuous mass (adaptive quadrature) plus atom weights.
  QuadratureResult<double> mass(double abs_tol = 1e-10) const;

  /// Mass of the continuous part outside [-1, 1] (Gaussian tail), closed form.
  double leakage() const;

private:
  XiKind kind_;
  double lambda_t_;
};

}  // namespace spinrtn
