#pragma once

// Many independent fluctuators sharing one exchange coupling. Each
// non-unitary factor is a function of sigma_h, so products, powers and
// log-averages are taken kernel by kernel on the eigenvalues {-4, 0, 4}.

#include <vector>

#include "spinrtn/algebra.hpp"
#include "spinrtn/rtn.hpp"

namespace spinrtn {

/// q_unitary(j0, t) * prod_i qnu_exact(alpha_i, lambda_i, t). Every entry
/// must carry the same j0.
SuperOperator product_fluctuators(const std::vector<FluctuatorParams>& fluctuators, double t);

struct SpectralComponent {
  double alpha = 0.0;
  double lambda = 1.0;
  double weight = 0.0;
};

/// N fluctuators of which a fraction weight_i have parameters (alpha_i, lambda_i).
struct DiscreteSpectrum {
  std::vector<SpectralComponent> components;
  double n_fluctuators = 0.0;

  /// Weights >= 0 summing to 1 within 1e-10, N >= 0.
  void validate() const;
};

/// q_unitary(j0, t) * exp(N sum_i p_i ln qnu_exact(alpha_i, lambda_i, t)).
/// Throws std::domain_error if any kernel value is <= 0.
SuperOperator weighted_product(const DiscreteSpectrum& spectrum, double j0, double t);

enum class LambdaLaw { point, uniform, log_uniform };
enum class AlphaLaw { constant, uniform, tabulated };

/// Product law S(alpha, lambda) = A(alpha) L(lambda).
struct ContinuousSpectrum {
  LambdaLaw lambda_law = LambdaLaw::log_uniform;
  double lambda_min = 1.0;
  double lambda_max = 1.0;  // ignored for point

  AlphaLaw alpha_law = AlphaLaw::constant;
  double alpha_min = 0.0;  // constant value, or lower end for uniform
  double alpha_max = 0.0;
  std::vector<double> alpha_values;   // tabulated
  std::vector<double> alpha_weights;  // tabulated, sum to 1

  double n_fluctuators = 0.0;

  void validate() const;
  /// Mean of 1 / lambda under L.
  double mean_inverse_lambda() const;
  /// Mean of alpha^2 under A.
  double mean_alpha_squared() const;
};

struct SpectralComposeOptions {
  double abs_tol = 1e-10;  // per kernel exponent integral
};

/// q_unitary(j0, t) * exp(N \iint S ln qnu_exact dalpha dlambda), the exponent
/// integrated adaptively per eigenvalue. Throws std::domain_error when a
/// kernel is <= 0 anywhere on the support.
SuperOperator spectral_compose(const ContinuousSpectrum& spectrum, double j0, double t,
                               const SpectralComposeOptions& options = {});

/// Gauss-Legendre discretisation with `points` nodes per continuous axis
/// (in ln lambda for the log-uniform law).
DiscreteSpectrum discretize(const ContinuousSpectrum& spectrum, int points = 64);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace spinrtn
