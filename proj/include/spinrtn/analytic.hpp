#pragma once

// Closed-form ensemble-averaged superoperators for a single fluctuator.
//
// Every non-unitary part is a function of sigma_h, so it is fixed by a scalar
// kernel k(x, y) evaluated on the eigenvalues s in {-4, 0, 4} with
// x = alpha * s * t and y = lambda * t (the averaging window is the evolution
// time). Kernels are even in x and equal 1 at x = 0.

#include "spinrtn/algebra.hpp"
#include "spinrtn/rtn.hpp"

namespace spinrtn {

enum class Regime { no_fluct, ge1, slow, fast, exact_full, approx_full };

enum class Form { exact, approx };

const char* to_string(Regime regime);

// --- Scalar kernels ---------------------------------------------------------

/// cos x: no switch in the window.
double kernel_zero(double x);
/// sin x / x: exactly one switch, uniformly placed.
double kernel_slow(double x);
/// exp(-x^2 / (2y)): many switches.
double kernel_fast(double x, double y);
/// [c(x, y) - cos x] / (2 sinh^2(y/2)) with c = cos sqrt(x^2 - y^2) for
/// |x| >= y and cosh sqrt(y^2 - x^2) below. Real and continuous across
/// |x| = y; tends to sin x / x as y -> 0.
double kernel_ge1(double x, double y);
/// e^{-y} cos x + (1 - e^{-y}) kernel_ge1(x, y).
double kernel_exact(double x, double y);
/// p0 cos x + p1 sinc x + p_{>1} exp(-x^2 / (2y)).
double kernel_approx(double x, double y);

double regime_kernel(Regime regime, double x, double y);

// --- Superoperators ---------------------------------------------------------

/// exp(-i j0 sigma_h t).
SuperOperator q_unitary(double j0, double t);

SuperOperator qnu_zero(double alpha, double t);
SuperOperator qnu_ge1(double alpha, double lambda, double t);
SuperOperator qnu_slow(double alpha, double t);
SuperOperator qnu_fast(double alpha, double lambda, double t);
SuperOperator qnu_exact(double alpha, double lambda, double t);
SuperOperator qnu_approx(double alpha, double lambda, double t);

/// Non-unitary part for any regime. lambda is ignored by no_fluct and slow.
SuperOperator qnu(Regime regime, double alpha, double lambda, double t);

/// Kernel at s = 4, the value every non-trivially acted entry carries.
double q_nu_value(Regime regime, double alpha, double lambda, double t);

/// q_unitary(j0, t) * qnu_exact or qnu_approx.
SuperOperator q_full(const FluctuatorParams& params, double t, Form form);

/// Markovian generator with jump operator (alpha / sqrt(lambda)) sigma_1.sigma_2;
/// equal to -(alpha^2 / (2 lambda)) sigma_h^2.
SuperOperator lindblad_superoperator(double alpha, double lambda);

}  // namespace spinrtn
