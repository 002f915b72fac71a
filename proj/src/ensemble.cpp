#include "spinrtn/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "spinrtn/analytic.hpp"
#include "spinrtn/rng.hpp"

namespace spinrtn {

namespace {

constexpr std::size_t kLeaf = 16;

template <class T>
T pairwise(const T* data, std::size_t n) {
  if (n <= kLeaf) {
    T acc{};
    for (std::size_t i = 0; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise(data, half) + pairwise(data + half, n - half);
}

unsigned resolve_threads(unsigned requested, std::uint64_t n) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::uint64_t>(t, n));
}

// Runs body(begin, end, slot) over [0, n) split into contiguous blocks.
template <class Body>
void parallel_blocks(std::uint64_t n, unsigned threads, Body&& body) {
  if (threads <= 1) {
    body(0, n, 0u);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::uint64_t chunk = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t begin = std::min<std::uint64_t>(n, w * chunk);
    const std::uint64_t end = std::min<std::uint64_t>(n, begin + chunk);
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& th : pool) th.join();
}

void check_ensemble(double t, std::uint64_t n, int bins) {
  if (!(std::isfinite(t) && t > 0.0)) {
    std::ostringstream msg;
    msg << "t must be > 0 (got " << t << ")";
    throw std::invalid_argument(msg.str());
  }
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (bins < 1) throw std::invalid_argument("histogram_bins must be >= 1");
}

struct Draw {
  Complex phasor;  // exp(-4 i sum_i alpha_i (t_plus - t_minus)_i)
  double xi;       // fluctuator 0
  bool switched;
};

// Turns per-history phasors into the report. Every history superoperator is
// exp(-i j0 sigma_h t) (P0 + z P4 + conj(z) P-4), so the phasor carries all
// the randomness.
EnsembleReport summarize(const std::vector<Draw>& draws, double j0, double t, int bins, std::uint64_t seed) {
  const std::size_t n = draws.size();
  EnsembleReport rep;
  rep.n_trajectories = n;
  rep.master_seed = seed;

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) z[k] = draws[k].phasor;
  const Complex m = pairwise(z.data(), n) / static_cast<double>(n);

  std::vector<double> abs_dev(n);
  std::vector<Complex> sq_dev(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex d = z[k] - m;
    abs_dev[k] = std::norm(d);
    sq_dev[k] = d * d;
  }
  double var = 0.0;
  Complex pseudo{};
  if (n > 1) {
    var = pairwise(abs_dev.data(), n) / static_cast<double>(n - 1);
    pseudo = pairwise(sq_dev.data(), n) / static_cast<double>(n - 1);
  }

  const auto& spec = sigma_h_spectrum();
  const SuperOperator unitary = q_unitary(j0, t);
  const Matrix16c b = unitary.matrix() * spec.spaces[2].projector;
  const Matrix16c c = unitary.matrix() * spec.spaces[0].projector;
  const Matrix16c a = unitary.matrix() * spec.spaces[1].projector;
  rep.mean_superop = SuperOperator(a + m * b + std::conj(m) * c);
  rep.kernel_mean = m;
  rep.kernel_standard_error = std::sqrt(var / static_cast<double>(n));

  for (int i = 0; i < kSuperDim; ++i) {
    for (int j = 0; j < kSuperDim; ++j) {
      const Complex bij = b(i, j);
      const Complex cij = c(i, j);
      const double v = (std::norm(bij) + std::norm(cij)) * var + 2.0 * std::real(bij * std::conj(cij) * pseudo);
      rep.element_standard_error(i, j) = std::sqrt(std::max(0.0, v) / static_cast<double>(n));
    }
  }
  rep.standard_error = rep.element_standard_error.maxCoeff();

  rep.xi_histogram.counts.assign(static_cast<std::size_t>(bins), 0);
  for (const auto& d : draws) {
    if (!d.switched) {
      (d.xi > 0 ? rep.xi_histogram.atom_pos : rep.xi_histogram.atom_neg)++;
      continue;
    }
    auto bin = static_cast<std::int64_t>(std::floor((d.xi + 1.0) / 2.0 * bins));
    bin = std::clamp<std::int64_t>(bin, 0, bins - 1);
    rep.xi_histogram.counts[static_cast<std::size_t>(bin)]++;
  }
  return rep;
}

}  // namespace

std::uint64_t XiHistogram::switched() const {
  std::uint64_t s = 0;
  for (auto c : counts) s += c;
  return s;
}

Complex pairwise_sum(const Complex* data, std::size_t n) { return pairwise(data, n); }
double pairwise_sum(const double* data, std::size_t n) { return pairwise(data, n); }

EnsembleReport mc_average(const FluctuatorParams& params, double t, std::uint64_t n, std::uint64_t master_seed,
                          const EnsembleOptions& options) {
  return mc_average_multi({params}, t, n, master_seed, options);
}

EnsembleReport mc_average_multi(const std::vector<FluctuatorParams>& fluctuators, double t, std::uint64_t n,
                                std::uint64_t master_seed, const EnsembleOptions& options) {
  if (fluctuators.empty()) throw std::invalid_argument("at least one fluctuator is required");
  for (const auto& f : fluctuators) {
    f.validate();
    if (f.j0 != fluctuators.front().j0) throw std::invalid_argument("all fluctuators must share j0");
  }
  check_ensemble(t, n, options.histogram_bins);

  std::vector<Draw> draws(n);
  const bool single = fluctuators.size() == 1;
  parallel_blocks(n, resolve_threads(options.threads, n), [&](std::uint64_t begin, std::uint64_t end, unsigned) {
    for (std::uint64_t k = begin; k < end; ++k) {
      const std::uint64_t seed = substream_seed(master_seed, k);
      double phase = 0.0;
      Draw d{};
      for (std::size_t i = 0; i < fluctuators.size(); ++i) {
        const auto occ =
            sample_occupation(fluctuators[i].lambda, t, single ? seed : substream_seed(seed, i));
        phase += fluctuators[i].alpha * occ.occupation;
        if (i == 0) {
          d.xi = occ.occupation / t;
          d.switched = occ.jumps > 0;
          if (!d.switched) d.xi = occ.initial_sign;
        }
      }
      d.phasor = std::exp(Complex(0.0, -4.0 * phase));
      draws[k] = d;
    }
  });
  return summarize(draws, fluctuators.front().j0, t, options.histogram_bins, master_seed);
}

QuadratureReport quadrature_q(const FluctuatorParams& params, double t, XiKind kind, double abs_tol) {
  params.validate();
  if (!(std::isfinite(t) && t > 0.0)) throw std::invalid_argument("t must be > 0");
  const XiDistribution law(kind, params.lambda * t);
  const double omega = 4.0 * params.alpha * t;

  // Panels sized so each holds at most 1/8 of a period of the fastest phase.
  const double per_unit = 8.0 * omega / (2.0 * std::numbers::pi);
  const auto breaks = law.breakpoints();

  auto mass = integrate_piecewise([&](double xi) { return law.density(xi); }, breaks, 0.5 * abs_tol, per_unit);
  auto wave = integrate_piecewise(
      [&](double xi) { return law.density(xi) * std::exp(Complex(0.0, -omega * xi)); }, breaks, 0.5 * abs_tol,
      per_unit);
  Complex k4 = wave.value;
  double k0 = mass.value;
  for (const auto& atom : law.atoms()) {
    k0 += atom.weight;
    k4 += atom.weight * std::exp(Complex(0.0, -omega * atom.location));
  }

  const auto& spec = sigma_h_spectrum();
  const Matrix16c nu = k0 * spec.spaces[1].projector + k4 * spec.spaces[2].projector +
                       std::conj(k4) * spec.spaces[0].projector;
  QuadratureReport rep;
  rep.value = q_unitary(params.j0, t) * SuperOperator(nu);
  rep.error = mass.error + wave.error;
  rep.intervals = mass.intervals + wave.intervals;
  return rep;
}

CompareReport compare(const SuperOperator& a, const SuperOperator& b) {
  CompareReport rep;
  const Matrix16c d = a.matrix() - b.matrix();
  rep.sup_norm = max_abs(d);
  rep.frobenius = d.norm();
  const std::array<double, 3> eig = {-4.0, 0.0, 4.0};
  for (std::size_t k = 0; k < 3; ++k) rep.kernel_delta[k] = std::abs(kernel_value(a, eig[k]) - kernel_value(b, eig[k]));
  return rep;
}

}  // namespace spinrtn
