#pragma once

// Symmetric random telegraph noise eta(t) = +-1 with switching rate lambda.
// Units: hbar = 1; j0, alpha and lambda are inverse times.

#include <cstdint>
#include <vector>

#include "spinrtn/algebra.hpp"

namespace spinrtn {

/// J(t) = j0 + alpha * eta(t).
struct FluctuatorParams {
  double j0 = 0.0;
  double alpha = 0.0;
  double lambda = 1.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// One realization of eta on [0, duration].
class RtnTrajectory {
public:
  RtnTrajectory(double duration, int initial_sign, std::vector<double> jump_times);

  double duration() const noexcept { return duration_; }
  int initial_sign() const noexcept { return initial_sign_; }
  const std::vector<double>& jump_times() const noexcept { return jump_times_; }

private:
  double duration_;
  int initial_sign_;
  std::vector<double> jump_times_;
};

/// Jump times are cumulative sums of -ln(p)/lambda with p uniform on (0,1),
/// truncated at `duration`; eta(0) is +1 or -1 with probability 1/2.
/// Deterministic in `seed`.
RtnTrajectory sample_trajectory(const FluctuatorParams& params, double duration, std::uint64_t seed);

/// Trajectory `index` of the ensemble rooted at `master_seed`.
RtnTrajectory sample_trajectory(const FluctuatorParams& params, double duration,
                                std::uint64_t master_seed, std::uint64_t index);

/// eta(t), right-continuous at jump instants. Throws std::out_of_range for
/// t outside [0, duration].
int eta_at(const RtnTrajectory& traj, double t);

/// Integral of eta over [from, to] (i.e. t_plus - t_minus on that window).
double occupation_difference(const RtnTrajectory& traj, double from, double to);

/// xi = (t_plus - t_minus) / duration.
double mean_state_xi(const RtnTrajectory& traj);

/// exp(-i (j0 + alpha) sigma_h t_plus) exp(-i (j0 - alpha) sigma_h t_minus).
SuperOperator trajectory_superoperator(const FluctuatorParams& params, const RtnTrajectory& traj);

/// Summary of a trajectory without materializing its jump list. Uses the
/// same draw sequence as sample_trajectory, so results agree for a seed.
struct OccupationSample {
  double occupation = 0.0;  // t_plus - t_minus
  int initial_sign = 1;
  std::size_t jumps = 0;
};

OccupationSample sample_occupation(double lambda, double duration, std::uint64_t seed);

}  // namespace spinrtn
