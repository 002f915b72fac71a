#pragma once

// Two independent routes to the averaged superoperator: Monte Carlo over
// sampled telegraph histories, and quadrature over the law of the mean
// fluctuator state xi.

#include <array>
#include <cstdint>
#include <vector>

#include "spinrtn/algebra.hpp"
#include "spinrtn/pdf.hpp"
#include "spinrtn/rtn.hpp"

namespace spinrtn {

/// Counts of xi over an ensemble. Histories without a switch sit exactly at
/// +-1 and are counted as atoms, not in the bins.
struct XiHistogram {
  std::vector<std::uint64_t> counts;  // bins of equal width on [-1, 1]
  std::uint64_t atom_pos = 0;
  std::uint64_t atom_neg = 0;

  double bin_width() const { return 2.0 / static_cast<double>(counts.size()); }
  std::uint64_t switched() const;
};

struct EnsembleReport {
  std::uint64_t n_trajectories = 0;
  std::uint64_t master_seed = 0;
  SuperOperator mean_superop;
  /// Element-wise standard error of the mean, sqrt(E|x - mean|^2 / (n (n-1))).
  /// Zero when n = 1.
  Eigen::Matrix<double, 16, 16> element_standard_error = Eigen::Matrix<double, 16, 16>::Zero();
  /// Largest entry of element_standard_error.
  double standard_error = 0.0;
  /// Mean kernel on the s = 4 eigenspace after removing exp(-i j0 s t), and
  /// its standard error. This is the Monte Carlo estimate of Q_NU.
  Complex kernel_mean{1.0, 0.0};
  double kernel_standard_error = 0.0;
  XiHistogram xi_histogram;
};

/// Options for mc_average. threads = 0 uses the hardware concurrency. The
/// result does not depend on the thread count.
struct EnsembleOptions {
  int histogram_bins = 50;
  unsigned threads = 1;
};

/// Mean of trajectory_superoperator over n histories with substreams
/// (master_seed, 0..n-1).
EnsembleReport mc_average(const FluctuatorParams& params, double t, std::uint64_t n, std::uint64_t master_seed,
                          const EnsembleOptions& options = {});

/// Independent fluctuators acting together: J(t) = j0 + sum_i alpha_i eta_i(t).
/// All entries must share j0. Fluctuator i of history k draws from substream
/// (substream_seed(master_seed, k), i). The histogram tracks fluctuator 0.
EnsembleReport mc_average_multi(const std::vector<FluctuatorParams>& fluctuators, double t, std::uint64_t n,
                                std::uint64_t master_seed, const EnsembleOptions& options = {});

struct QuadratureReport {
  SuperOperator value;
  double error = 0.0;  // summed absolute error estimate of the kernel integrals
  int intervals = 0;
};

/// Integral of exp(-i (j0 + alpha xi) sigma_h t) against the xi law `kind`
/// with lambda_t = lambda * t; atoms are added exactly. Throws
/// QuadratureError when abs_tol is not met.
QuadratureReport quadrature_q(const FluctuatorParams& params, double t, XiKind kind, double abs_tol = 1e-10);

struct CompareReport {
  double sup_norm = 0.0;
  double frobenius = 0.0;
  /// |kernel_a(s) - kernel_b(s)| for s = -4, 0, 4.
  std::array<double, 3> kernel_delta{};
};

CompareReport compare(const SuperOperator& a, const SuperOperator& b);

/// Pairwise summation; the grouping depends only on the length.
Complex pairwise_sum(const Complex* data, std::size_t n);
double pairwise_sum(const double* data, std::size_t n);

}  // namespace spinrtn
