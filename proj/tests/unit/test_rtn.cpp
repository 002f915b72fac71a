#include <algorithm>
#include <cmath>
#include <string>

#include "doctest.h"
#include "spinrtn/rng.hpp"
#include "spinrtn/rtn.hpp"
#include "unit/oracles.hpp"

using namespace spinrtn;

namespace {

std::string message_of(const auto& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

// Kolmogorov-Smirnov statistic sqrt(n) D against the exponential CDF.
double ks_exponential(std::vector<double> sample, double rate) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = 1.0 - std::exp(-rate * sample[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return std::sqrt(n) * d;
}

}  // namespace

TEST_SUITE("random streams") {
  TEST_CASE("splitmix and xoshiro reproduce reference outputs") {
    CHECK(splitmix64_mix(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
    Xoshiro256 g0(0);
    CHECK(g0() == 0x99ec5f36cb75f2b4ULL);
    CHECK(g0() == 0xbf6e1f784956452aULL);
    CHECK(g0() == 0x1a5f849d4933e6e0ULL);
    Xoshiro256 g42(42);
    CHECK(g42() == 0x15780b2e0c2ec716ULL);
    CHECK(g42() == 0x6104d9866d113a7eULL);
    CHECK(g42() == 0xae17533239e499a1ULL);
  }

  TEST_CASE("uniform_open stays inside (0, 1)") {
    Xoshiro256 g(7);
    double lo = 1.0;
    double hi = 0.0;
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double u = g.uniform_open();
      lo = std::min(lo, u);
      hi = std::max(hi, u);
      sum += u;
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  }

  TEST_CASE("substreams are distinct and reproducible") {
    CHECK(substream_seed(42, 0) == substream_seed(42, 0));
    CHECK(substream_seed(42, 0) != substream_seed(42, 1));
    CHECK(substream_seed(42, 0) != substream_seed(43, 0));
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t k = 0; k < 10000; ++k) seeds.push_back(substream_seed(1, k));
    std::sort(seeds.begin(), seeds.end());
    CHECK(std::adjacent_find(seeds.begin(), seeds.end()) == seeds.end());
  }
}

TEST_SUITE("telegraph process") {
  TEST_CASE("parameter validation names the field") {
    CHECK(message_of([] { FluctuatorParams{0.0, -1.0, 1.0}.validate(); }).find("alpha") != std::string::npos);
    CHECK(message_of([] { FluctuatorParams{0.0, 1.0, 0.0}.validate(); }).find("lambda") != std::string::npos);
    CHECK(message_of([] { FluctuatorParams{NAN, 1.0, 1.0}.validate(); }).find("j0") != std::string::npos);
    CHECK_THROWS_AS(sample_trajectory({1.0, 1.0, 1.0}, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_trajectory({1.0, 1.0, 1.0}, -2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(RtnTrajectory(1.0, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(RtnTrajectory(1.0, 1, {0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(RtnTrajectory(1.0, 1, {1.0}), std::invalid_argument);
  }

  TEST_CASE("trajectories are deterministic in the seed") {
    const FluctuatorParams p{1.0, 1.0, 3.0};
    const auto a = sample_trajectory(p, 5.0, 42, 17);
    const auto b = sample_trajectory(p, 5.0, 42, 17);
    CHECK(a.jump_times() == b.jump_times());
    CHECK(a.initial_sign() == b.initial_sign());
    const auto c = sample_trajectory(p, 5.0, 42, 18);
    CHECK(a.jump_times() != c.jump_times());
  }

  TEST_CASE("eta is right-continuous and occupation is exact on a fixed path") {
    const RtnTrajectory traj(4.0, 1, {1.0, 1.5, 3.0});
    CHECK(eta_at(traj, 0.0) == 1);
    CHECK(eta_at(traj, 0.999) == 1);
    CHECK(eta_at(traj, 1.0) == -1);
    CHECK(eta_at(traj, 1.5) == 1);
    CHECK(eta_at(traj, 3.2) == -1);
    CHECK(eta_at(traj, 4.0) == -1);
    CHECK_THROWS_AS(eta_at(traj, 4.01), std::out_of_range);
    CHECK_THROWS_AS(eta_at(traj, -0.01), std::out_of_range);
    // +1 on [0,1], -1 on [1,1.5], +1 on [1.5,3], -1 on [3,4]
    CHECK(occupation_difference(traj, 0.0, 4.0) == doctest::Approx(1.0 - 0.5 + 1.5 - 1.0));
    CHECK(occupation_difference(traj, 1.2, 3.5) == doctest::Approx(-0.3 + 1.5 - 0.5));
    CHECK(mean_state_xi(traj) == doctest::Approx(0.25));
    CHECK_THROWS_AS(occupation_difference(traj, 2.0, 1.0), std::out_of_range);
  }

  TEST_CASE("trajectory superoperator equals the time-ordered product of segment propagators") {
    const RtnTrajectory traj(2.0, -1, {0.3, 0.9, 1.7});
    const FluctuatorParams p{0.8, 0.5, 1.0};
    const double edges[] = {0.0, 0.3, 0.9, 1.7, 2.0};
    const Matrix4c h = heisenberg_hamiltonian();
    SuperOperator ordered = SuperOperator::identity();
    int sign = -1;
    for (int k = 0; k < 4; ++k) {
      const double dt = edges[k + 1] - edges[k];
      const Matrix4c u = matrix_exp(Matrix4c(Complex(0.0, -(p.j0 + p.alpha * sign) * dt) * h));
      ordered = unitary_to_superop(u) * ordered;
      sign = -sign;
    }
    const SuperOperator s = trajectory_superoperator(p, traj);
    CHECK(max_abs(Matrix16c(s.matrix() - ordered.matrix())) <= 1e-12);
    CHECK(unitarity_error(s) <= 1e-12);

    // Reordering the switches with the same occupation gives the same map.
    const RtnTrajectory other(2.0, 1, {0.2, 0.8});  // t_plus 1.4, t_minus 0.6
    const RtnTrajectory same_occ(2.0, -1, {0.6});    // same split, one switch
    CHECK(max_abs(Matrix16c(trajectory_superoperator(p, other).matrix() -
                            trajectory_superoperator(p, same_occ).matrix())) <= 1e-12);
  }

  TEST_CASE("switching gaps are exponential") {
    const double lambda = 2.5;
    std::vector<double> gaps;
    for (std::uint64_t k = 0; k < 400; ++k) {
      const auto traj = sample_trajectory({0.0, 1.0, lambda}, 40.0, 9, k);
      double prev = 0.0;
      for (double t : traj.jump_times()) {
        gaps.push_back(t - prev);
        prev = t;
      }
    }
    REQUIRE(gaps.size() > 30000);
    CHECK(ks_exponential(gaps, lambda) < 1.63);
  }

  TEST_CASE("switch counts are Poisson and initial states are balanced") {
    const double lambda = 1.7;
    const double duration = 3.0;
    const double y = lambda * duration;
    const int n = 40000;
    double sum = 0.0;
    double sum_sq = 0.0;
    int zero = 0;
    int plus = 0;
    for (int k = 0; k < n; ++k) {
      const auto s = sample_occupation(lambda, duration, substream_seed(5, static_cast<std::uint64_t>(k)));
      const double c = static_cast<double>(s.jumps);
      sum += c;
      sum_sq += c * c;
      zero += s.jumps == 0;
      plus += s.initial_sign == 1;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    CHECK(std::abs(mean - y) < 4.0 * std::sqrt(y / n));
    CHECK(std::abs(var - y) < 4.0 * y * std::sqrt(2.0 / n) + 4.0 * std::sqrt(y / n));
    const double p0 = std::exp(-y);
    CHECK(std::abs(zero / double(n) - p0) < 4.0 * std::sqrt(p0 * (1 - p0) / n));
    CHECK(std::abs(plus / double(n) - 0.5) < 4.0 * std::sqrt(0.25 / n));
  }

  TEST_CASE("occupation sampler matches the trajectory sampler") {
    const FluctuatorParams p{0.0, 1.0, 4.0};
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL, 123456789ULL}) {
      const auto traj = sample_trajectory(p, 2.5, seed);
      const auto occ = sample_occupation(p.lambda, 2.5, seed);
      CHECK(occ.jumps == traj.jump_times().size());
      CHECK(occ.initial_sign == traj.initial_sign());
      CHECK(occ.occupation == doctest::Approx(occupation_difference(traj, 0.0, 2.5)).epsilon(1e-12));
    }
  }

  TEST_CASE("mean-state moments and characteristic function match the telegraph law") {
    // E xi^2 = 1/y - (1 - e^{-2y}) / (2 y^2) from the autocorrelation e^{-2 lambda |tau|}.
    for (double y : {0.3, 2.0, 8.0}) {
      const int n = 60000;
      double m2 = 0.0;
      double m4 = 0.0;
      double cf = 0.0;
      double cf2 = 0.0;
      const double x = 3.0;
      for (int k = 0; k < n; ++k) {
        const auto s = sample_occupation(y, 1.0, substream_seed(11, static_cast<std::uint64_t>(k)));
        const double xi = s.occupation;
        m2 += xi * xi;
        m4 += xi * xi * xi * xi;
        cf += std::cos(x * xi);
        cf2 += std::cos(x * xi) * std::cos(x * xi);
      }
      m2 /= n;
      m4 /= n;
      cf /= n;
      cf2 /= n;
      const double expect = 1.0 / y - (1.0 - std::exp(-2.0 * y)) / (2.0 * y * y);
      CHECK(std::abs(m2 - expect) < 4.0 * std::sqrt((m4 - m2 * m2) / n));
      CHECK(std::abs(cf - oracle::telegraph_cf(x, y)) < 4.0 * std::sqrt((cf2 - cf * cf) / n));
    }
  }
}
