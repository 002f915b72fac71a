#include "spinrtn/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spinrtn/analytic.hpp"
#include "spinrtn/pdf.hpp"
#include "spinrtn/rng.hpp"

namespace spinrtn {

namespace {

void check_segments(const std::vector<Segment>& segments) {
  for (const auto& seg : segments) {
    if (!(std::isfinite(seg.duration) && seg.duration >= 0.0)) {
      std::ostringstream msg;
      msg << "segment duration must be >= 0 (got " << seg.duration << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

double total_time(const std::vector<Segment>& segments) {
  double t = 0.0;
  for (const auto& seg : segments) t += seg.duration;
  return t;
}

int count_noisy(const std::vector<Segment>& segments) {
  return static_cast<int>(std::count_if(segments.begin(), segments.end(),
                                        [](const Segment& s) { return s.kind == Segment::Kind::noise; }));
}

// exp(-i phase sigma_h)
Matrix16c phase_superop(double phase) {
  const auto& spec = sigma_h_spectrum();
  return spec.spaces[1].projector + std::exp(Complex(0.0, -4.0 * phase)) * spec.spaces[2].projector +
         std::exp(Complex(0.0, 4.0 * phase)) * spec.spaces[0].projector;
}

// Time-ordered product where noise segment k (0-based among noisy ones) is
// replaced by noise(k, duration).
template <class NoiseFactor>
Matrix16c ordered_product(const std::vector<Segment>& segments, NoiseFactor&& noise) {
  Matrix16c acc = Matrix16c::Identity();
  int k = 0;
  for (const auto& seg : segments) {
    if (seg.kind == Segment::Kind::noise) {
      acc = noise(k++, seg.duration) * acc;
    } else {
      acc = unitary_to_superop(seg.unitary).matrix() * acc;
    }
  }
  return acc;
}

}  // namespace

Segment Segment::noise(double t) {
  Segment s;
  s.kind = Kind::noise;
  s.duration = t;
  return s;
}

Segment Segment::gate(const Matrix4c& u, double duration) {
  Segment s;
  s.kind = Kind::gate;
  s.duration = duration;
  s.unitary = u;
  return s;
}

Matrix4c named_gate(const std::string& name) {
  using namespace std::complex_literals;
  const Matrix4c id = Matrix4c::Identity();
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  Eigen::Matrix2cd s;
  s << 1, 0, 0, 1i;
  const Eigen::Matrix2cd i2 = Eigen::Matrix2cd::Identity();
  auto on = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
  };

  if (name == "I") return id;
  if (name == "X1") return pauli_on(Pauli::x, 1);
  if (name == "X2") return pauli_on(Pauli::x, 2);
  if (name == "Y1") return pauli_on(Pauli::y, 1);
  if (name == "Y2") return pauli_on(Pauli::y, 2);
  if (name == "Z1") return pauli_on(Pauli::z, 1);
  if (name == "Z2") return pauli_on(Pauli::z, 2);
  if (name == "H1") return on(h, i2);
  if (name == "H2") return on(i2, h);
  if (name == "S1") return on(s, i2);
  if (name == "S2") return on(i2, s);
  Matrix4c g = Matrix4c::Zero();
  if (name == "CNOT") {
    g(0, 0) = g(1, 1) = g(2, 3) = g(3, 2) = 1.0;
    return g;
  }
  if (name == "CZ") {
    g.diagonal() << 1.0, 1.0, 1.0, -1.0;
    return g;
  }
  if (name == "SWAP") {
    g(0, 0) = g(1, 2) = g(2, 1) = g(3, 3) = 1.0;
    return g;
  }
  throw std::invalid_argument("unknown gate name '" + name + "'");
}

QDecomposition q_decompose(const FluctuatorParams& params, double t) {
  params.validate();
  const double y = params.lambda * t;
  const SuperOperator unitary = q_unitary(params.j0, t);
  QDecomposition out;
  out.no_fluct = unitary * qnu_zero(params.alpha, t) * Complex(poisson_weight(0, y));
  out.fluct = unitary * qnu_ge1(params.alpha, params.lambda, t) * Complex(poisson_tail_gt0(y));
  return out;
}

SuperOperator q_zero_branch(double alpha, double t, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (!(std::isfinite(alpha) && alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(std::isfinite(t) && t >= 0.0)) throw std::invalid_argument("t must be >= 0");
  return SuperOperator(phase_superop(sign * alpha * t));
}

SuperOperator raw_sequence(const std::vector<Segment>& segments, const FluctuatorParams& params) {
  params.validate();
  check_segments(segments);
  return SuperOperator(ordered_product(
      segments, [&](int, double t) { return q_full(params, t, Form::exact).matrix(); }));
}

SuperOperator zeroth_cross_terms(const std::vector<Segment>& segments, const FluctuatorParams& params) {
  params.validate();
  check_segments(segments);
  const int n = count_noisy(segments);
  if (n > kMaxNoisySegments) {
    std::ostringstream msg;
    msg << "cross-term enumeration supports at most " << kMaxNoisySegments << " noisy segments (got " << n << ")";
    throw std::invalid_argument(msg.str());
  }
  if (n <= 1) return SuperOperator::zero();

  const unsigned strings = 1u << n;
  const unsigned all_minus = strings - 1;
  Matrix16c mixed = Matrix16c::Zero();
  Matrix16c constant = Matrix16c::Zero();
  for (unsigned bits = 0; bits < strings; ++bits) {
    // bit k set: eta = -1 throughout noisy segment k
    const Matrix16c term = ordered_product(segments, [&](int k, double t) {
      const int sign = (bits >> k) & 1u ? -1 : 1;
      return phase_superop((params.j0 + sign * params.alpha) * t);
    });
    if (bits == 0 || bits == all_minus) {
      constant += term;
    } else {
      mixed += term;
    }
  }
  const double p0 = poisson_weight(0, params.lambda * total_time(segments));
  const double scale = p0 / static_cast<double>(strings);
  return SuperOperator(scale * (mixed - 0.5 * static_cast<double>(strings - 2) * constant));
}

SequenceResult corrected_sequence(const std::vector<Segment>& segments, const FluctuatorParams& params) {
  params.validate();
  check_segments(segments);
  SequenceResult out;
  out.noisy_segments = count_noisy(segments);
  out.t_total = total_time(segments);
  out.p0 = poisson_weight(0, params.lambda * out.t_total);
  out.p_gt0 = poisson_tail_gt0(params.lambda * out.t_total);
  out.raw = raw_sequence(segments, params);
  out.raw_no_fluct = SuperOperator(ordered_product(
      segments, [&](int, double t) { return q_decompose(params, t).no_fluct.matrix(); }));
  out.removed_cross_terms = zeroth_cross_terms(segments, params);
  out.corrected = out.raw - out.removed_cross_terms;
  out.corrected_no_fluct = out.raw_no_fluct - out.removed_cross_terms;
  out.notes = {
      "cross terms removed at zeroth order only; first and higher orders are kept",
      "the p_{>0} part is not corrected",
  };
  return out;
}

SequenceOracle mc_sequence(const std::vector<Segment>& segments, const FluctuatorParams& params, std::uint64_t n,
                           std::uint64_t master_seed, unsigned threads) {
  params.validate();
  check_segments(segments);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const double t_total = total_time(segments);

  SequenceOracle out;
  out.n_trajectories = n;
  out.master_seed = master_seed;
  if (t_total == 0.0) {
    out.mean = raw_sequence(segments, params);
    return out;
  }

  // Fixed blocks of histories summed in index order, then combined pairwise:
  // the result is independent of how blocks are spread over threads.
  constexpr std::uint64_t kBlock = 1024;
  const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<Matrix16c> sums(blocks, Matrix16c::Zero());
  std::vector<Eigen::Matrix<double, 16, 16>> squares(blocks, Eigen::Matrix<double, 16, 16>::Zero());

  std::vector<Matrix16c> gates;
  for (const auto& seg : segments)
    if (seg.kind == Segment::Kind::gate) gates.push_back(unitary_to_superop(seg.unitary).matrix());

  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t begin = b * kBlock;
    const std::uint64_t end = std::min(n, begin + kBlock);
    for (std::uint64_t k = begin; k < end; ++k) {
      const RtnTrajectory traj = sample_trajectory(params, t_total, master_seed, k);
      Matrix16c acc = Matrix16c::Identity();
      double clock = 0.0;
      std::size_t g = 0;
      for (const auto& seg : segments) {
        const double next = std::min(t_total, clock + seg.duration);
        if (seg.kind == Segment::Kind::noise) {
          const double d = occupation_difference(traj, clock, next);
          acc = phase_superop(params.j0 * seg.duration + params.alpha * d) * acc;
        } else {
          acc = gates[g++] * acc;
        }
        clock = next;
      }
      sums[b] += acc;
      squares[b] += acc.cwiseAbs2();
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  // Pairwise reduction over blocks.
  for (std::uint64_t stride = 1; stride < blocks; stride *= 2)
    for (std::uint64_t b = 0; b + stride < blocks; b += 2 * stride) {
      sums[b] += sums[b + stride];
      squares[b] += squares[b + stride];
    }

  const double nd = static_cast<double>(n);
  const Matrix16c mean = sums[0] / nd;
  out.mean = SuperOperator(mean);
  if (n > 1) {
    const Eigen::Matrix<double, 16, 16> var =
        ((squares[0] / nd - mean.cwiseAbs2()) * (nd / (nd - 1.0))).cwiseMax(0.0);
    out.element_standard_error = (var / nd).cwiseSqrt();
    out.standard_error = out.element_standard_error.maxCoeff();
  }
  return out;
}

}  // namespace spinrtn
