#include "spinrtn/rtn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spinrtn/rng.hpp"

namespace spinrtn {

namespace {

void require(bool ok, const char* field, const char* rule, double value) {
  if (ok) return;
  std::ostringstream msg;
  msg << field << " " << rule << " (got " << value << ")";
  throw std::invalid_argument(msg.str());
}

int draw_sign(Xoshiro256& rng) { return (rng() >> 63) ? 1 : -1; }

double draw_gap(Xoshiro256& rng, double lambda) { return -std::log(rng.uniform_open()) / lambda; }

void check_duration(double duration) {
  require(std::isfinite(duration) && duration > 0.0, "duration", "must be > 0", duration);
}

}  // namespace

void FluctuatorParams::validate() const {
  require(std::isfinite(j0), "j0", "must be finite", j0);
  require(std::isfinite(alpha) && alpha >= 0.0, "alpha", "must be >= 0", alpha);
  require(std::isfinite(lambda) && lambda > 0.0, "lambda", "must be > 0", lambda);
}

RtnTrajectory::RtnTrajectory(double duration, int initial_sign, std::vector<double> jump_times)
    : duration_(duration), initial_sign_(initial_sign), jump_times_(std::move(jump_times)) {
  check_duration(duration);
  if (initial_sign != 1 && initial_sign != -1)
    throw std::invalid_argument("initial_sign must be +1 or -1");
  double prev = 0.0;
  for (double t : jump_times_) {
    if (!(t > prev) || !(t < duration))
      throw std::invalid_argument("jump_times must be strictly increasing inside (0, duration)");
    prev = t;
  }
}

RtnTrajectory sample_trajectory(const FluctuatorParams& params, double duration, std::uint64_t seed) {
  params.validate();
  check_duration(duration);
  Xoshiro256 rng(seed);
  const int sign = draw_sign(rng);
  std::vector<double> jumps;
  double t = draw_gap(rng, params.lambda);
  while (t < duration) {
    // The running sum can stall in floating point at absurd rates.
    if (jumps.empty() || t > jumps.back()) jumps.push_back(t);
    t += draw_gap(rng, params.lambda);
  }
  return RtnTrajectory(duration, sign, std::move(jumps));
}

RtnTrajectory sample_trajectory(const FluctuatorParams& params, double duration,
                                std::uint64_t master_seed, std::uint64_t index) {
  return sample_trajectory(params, duration, substream_seed(master_seed, index));
}

int eta_at(const RtnTrajectory& traj, double t) {
  if (!(t >= 0.0 && t <= traj.duration())) throw std::out_of_range("eta_at: t outside [0, duration]");
  const auto& jumps = traj.jump_times();
  const auto flips = std::upper_bound(jumps.begin(), jumps.end(), t) - jumps.begin();
  return (flips % 2 == 0) ? traj.initial_sign() : -traj.initial_sign();
}

double occupation_difference(const RtnTrajectory& traj, double from, double to) {
  if (!(from >= 0.0 && from <= to && to <= traj.duration()))
    throw std::out_of_range("occupation_difference: window outside [0, duration]");
  double acc = 0.0;
  double last = from;
  int sign = eta_at(traj, from);
  const auto& jumps = traj.jump_times();
  for (auto it = std::upper_bound(jumps.begin(), jumps.end(), from); it != jumps.end() && *it < to; ++it) {
    acc += sign * (*it - last);
    last = *it;
    sign = -sign;
  }
  return acc + sign * (to - last);
}

double mean_state_xi(const RtnTrajectory& traj) {
  return occupation_difference(traj, 0.0, traj.duration()) / traj.duration();
}

SuperOperator trajectory_superoperator(const FluctuatorParams& params, const RtnTrajectory& traj) {
  params.validate();
  const double diff = occupation_difference(traj, 0.0, traj.duration());
  const double t_plus = 0.5 * (traj.duration() + diff);
  const double t_minus = 0.5 * (traj.duration() - diff);
  const double j_plus = params.j0 + params.alpha;
  const double j_minus = params.j0 - params.alpha;
  return apply_scalar_kernel([&](double s) {
    return std::exp(Complex(0.0, -j_plus * s * t_plus)) * std::exp(Complex(0.0, -j_minus * s * t_minus));
  });
}

OccupationSample sample_occupation(double lambda, double duration, std::uint64_t seed) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda", "must be > 0", lambda);
  check_duration(duration);
  Xoshiro256 rng(seed);
  OccupationSample out;
  out.initial_sign = draw_sign(rng);
  int sign = out.initial_sign;
  double last = 0.0;
  double acc = 0.0;
  double t = draw_gap(rng, lambda);
  while (t < duration) {
    if (t > last) {
      acc += sign * (t - last);
      last = t;
      sign = -sign;
      ++out.jumps;
    }
    t += draw_gap(rng, lambda);
  }
  out.occupation = acc + sign * (duration - last);
  return out;
}

}  // namespace spinrtn
