#pragma once

// Noisy exchange evolutions interleaved with gates that do not commute with
// sigma_h, and removal of the zeroth-order cross terms such products create.

#include <cstdint>
#include <string>
#include <vector>

#include "spinrtn/algebra.hpp"
#include "spinrtn/rtn.hpp"

namespace spinrtn {

struct Segment {
  enum class Kind { noise, gate };

  Kind kind = Kind::noise;
  double duration = 0.0;
  Matrix4c unitary = Matrix4c::Identity();  // gates only

  static Segment noise(double t);
  static Segment gate(const Matrix4c& u, double duration = 0.0);
};

/// Single-qubit and two-qubit gates by name: I, X1, X2, Y1, Y2, Z1, Z2, H1,
/// H2, S1, S2, CNOT, CZ, SWAP. Spin 1 is the left tensor factor.
Matrix4c named_gate(const std::string& name);

/// Exact q_full split by switch count: p0 Q^(u) cos(alpha sigma_h t) and
/// p_{>0} Q^(u) Q^(nu)_{>0}.
struct QDecomposition {
  SuperOperator no_fluct;
  SuperOperator fluct;
};

QDecomposition q_decompose(const FluctuatorParams& params, double t);

/// exp(-/+ i alpha sigma_h t): the no-switch evolution with eta fixed at +-1,
/// unitary part removed.
SuperOperator q_zero_branch(double alpha, double t, int sign);

/// Time-ordered product of q_full(exact) for noise and U kron conj(U) for gates.
SuperOperator raw_sequence(const std::vector<Segment>& segments, const FluctuatorParams& params);

/// Largest number of noisy segments accepted by the cross-term enumeration.
inline constexpr int kMaxNoisySegments = 12;

/// Zeroth-order cross terms. With n noisy segments every sign string
/// sigma in {+,-}^n gives a no-switch history
///   prod (Q^(u)(t_k) Q^{sigma_k}_0(t_k)) with the gates in place.
/// X0 = p0(lambda T_total) / 2^n [ sum_mixed - (2^n - 2)/2 sum_constant ],
/// which annihilates the trace, so raw - X0 keeps trace preservation and the
/// constant-sign (physical) histories. Zero for n <= 1.
SuperOperator zeroth_cross_terms(const std::vector<Segment>& segments, const FluctuatorParams& params);

struct SequenceResult {
  SuperOperator raw;
  SuperOperator corrected;
  SuperOperator removed_cross_terms;
  /// Components of raw and corrected coming from histories without any switch.
  SuperOperator raw_no_fluct;
  SuperOperator corrected_no_fluct;
  double p0 = 1.0;
  double p_gt0 = 0.0;
  double t_total = 0.0;
  int noisy_segments = 0;
  std::vector<std::string> notes;
};

/// corrected = raw - X0. T_total counts gate durations.
SequenceResult corrected_sequence(const std::vector<Segment>& segments, const FluctuatorParams& params);

struct SequenceOracle {
  std::uint64_t n_trajectories = 0;
  std::uint64_t master_seed = 0;
  SuperOperator mean;
  Eigen::Matrix<double, 16, 16> element_standard_error = Eigen::Matrix<double, 16, 16>::Zero();
  double standard_error = 0.0;
};

/// Monte Carlo over one continuous telegraph history spanning the whole
/// sequence. The history keeps running through gate durations, but no
/// exchange evolution acts while a gate is applied.
SequenceOracle mc_sequence(const std::vector<Segment>& segments, const FluctuatorParams& params, std::uint64_t n,
                           std::uint64_t master_seed, unsigned threads = 1);

}  // namespace spinrtn
