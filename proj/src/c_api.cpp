#include "spinrtn/spinrtn.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "spinrtn/analytic.hpp"
#include "spinrtn/composition.hpp"
#include "spinrtn/ensemble.hpp"
#include "spinrtn/pdf.hpp"
#include "spinrtn/rtn.hpp"
#include "spinrtn/sequence.hpp"
#include "spinrtn/special.hpp"

using namespace spinrtn;

struct spinrtn_superop {
  SuperOperator value;
};
struct spinrtn_trajectory {
  RtnTrajectory value;
};
struct spinrtn_ensemble {
  EnsembleReport value;
};
struct spinrtn_sequence {
  std::vector<Segment> segments;
};
struct spinrtn_sequence_result {
  SequenceResult value;
};

namespace {

thread_local std::string g_last_error;

spinrtn_status fail(spinrtn_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

class NullPointer : public std::invalid_argument {
public:
  explicit NullPointer(const char* name) : std::invalid_argument(std::string(name) + " must not be NULL") {}
};

template <class T>
T& need(T* p, const char* name) {
  if (p == nullptr) throw NullPointer(name);
  return *p;
}

template <class T>
const T& need(const T* p, const char* name) {
  if (p == nullptr) throw NullPointer(name);
  return *p;
}

template <class Body>
spinrtn_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return SPINRTN_OK;
  } catch (const NullPointer& e) {
    return fail(SPINRTN_NULL_POINTER, e.what());
  } catch (const QuadratureError& e) {
    return fail(SPINRTN_NO_CONVERGENCE, e.what());
  } catch (const std::domain_error& e) {
    return fail(SPINRTN_DOMAIN_ERROR, e.what());
  } catch (const std::out_of_range& e) {
    return fail(SPINRTN_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SPINRTN_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SPINRTN_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(SPINRTN_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(SPINRTN_INTERNAL_ERROR, "unknown error");
  }
}

FluctuatorParams to_params(const spinrtn_params* p) {
  const auto& v = need(p, "params");
  return FluctuatorParams{v.j0, v.alpha, v.lambda};
}

Regime to_regime(spinrtn_regime r) {
  switch (r) {
    case SPINRTN_REGIME_NO_FLUCT: return Regime::no_fluct;
    case SPINRTN_REGIME_GE1: return Regime::ge1;
    case SPINRTN_REGIME_SLOW: return Regime::slow;
    case SPINRTN_REGIME_FAST: return Regime::fast;
    case SPINRTN_REGIME_EXACT: return Regime::exact_full;
    case SPINRTN_REGIME_APPROX: return Regime::approx_full;
  }
  throw std::invalid_argument("unknown regime " + std::to_string(static_cast<int>(r)));
}

XiKind to_kind(spinrtn_xi_kind k) {
  switch (k) {
    case SPINRTN_XI_EXACT_FULL: return XiKind::exact_full;
    case SPINRTN_XI_EXACT_GE1: return XiKind::exact_ge1;
    case SPINRTN_XI_DELTA_PAIR: return XiKind::delta_pair;
    case SPINRTN_XI_UNIFORM_SLOW: return XiKind::uniform_slow;
    case SPINRTN_XI_GAUSSIAN_FAST: return XiKind::gaussian_fast;
    case SPINRTN_XI_APPROX_FULL: return XiKind::approx_full;
  }
  throw std::invalid_argument("unknown xi kind " + std::to_string(static_cast<int>(k)));
}

Form to_form(spinrtn_form f) {
  if (f == SPINRTN_FORM_EXACT) return Form::exact;
  if (f == SPINRTN_FORM_APPROX) return Form::approx;
  throw std::invalid_argument("unknown form " + std::to_string(static_cast<int>(f)));
}

void emit(spinrtn_superop** out, const SuperOperator& s) {
  need(out, "out");
  *out = new spinrtn_superop{s};
}

Matrix4c read4(const double* re, const double* im) {
  need(re, "re");
  need(im, "im");
  Matrix4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(re[4 * i + j], im[4 * i + j]);
  return m;
}

void write4(const Matrix4c& m, double* re, double* im) {
  need(re, "re");
  need(im, "im");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      re[4 * i + j] = m(i, j).real();
      im[4 * i + j] = m(i, j).imag();
    }
}

ContinuousSpectrum to_spectrum(const spinrtn_spectrum* p) {
  const auto& s = need(p, "spectrum");
  ContinuousSpectrum out;
  switch (s.lambda_law) {
    case SPINRTN_LAMBDA_POINT: out.lambda_law = LambdaLaw::point; break;
    case SPINRTN_LAMBDA_UNIFORM: out.lambda_law = LambdaLaw::uniform; break;
    case SPINRTN_LAMBDA_LOG_UNIFORM: out.lambda_law = LambdaLaw::log_uniform; break;
    default: throw std::invalid_argument("unknown lambda law");
  }
  switch (s.alpha_law) {
    case SPINRTN_ALPHA_CONSTANT: out.alpha_law = AlphaLaw::constant; break;
    case SPINRTN_ALPHA_UNIFORM: out.alpha_law = AlphaLaw::uniform; break;
    case SPINRTN_ALPHA_TABULATED: out.alpha_law = AlphaLaw::tabulated; break;
    default: throw std::invalid_argument("unknown alpha law");
  }
  out.lambda_min = s.lambda_min;
  out.lambda_max = s.lambda_max;
  out.alpha_min = s.alpha_min;
  out.alpha_max = s.alpha_max;
  if (out.alpha_law == AlphaLaw::tabulated) {
    need(s.alpha_values, "alpha_values");
    need(s.alpha_weights, "alpha_weights");
    out.alpha_values.assign(s.alpha_values, s.alpha_values + s.alpha_count);
    out.alpha_weights.assign(s.alpha_weights, s.alpha_weights + s.alpha_count);
  }
  out.n_fluctuators = s.n_fluctuators;
  return out;
}

std::vector<FluctuatorParams> to_list(const spinrtn_params* list, std::size_t count) {
  if (count == 0) throw std::invalid_argument("count must be >= 1");
  need(list, "fluctuators");
  std::vector<FluctuatorParams> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back({list[i].j0, list[i].alpha, list[i].lambda});
  return out;
}

}  // namespace

extern "C" {

const char* spinrtn_last_error(void) { return g_last_error.c_str(); }

const char* spinrtn_version(void) { return SPINRTN_VERSION_STRING; }

const char* spinrtn_status_name(spinrtn_status status) {
  switch (status) {
    case SPINRTN_OK: return "ok";
    case SPINRTN_INVALID_ARGUMENT: return "invalid_argument";
    case SPINRTN_DOMAIN_ERROR: return "domain_error";
    case SPINRTN_OUT_OF_RANGE: return "out_of_range";
    case SPINRTN_NO_CONVERGENCE: return "no_convergence";
    case SPINRTN_NULL_POINTER: return "null_pointer";
    case SPINRTN_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

// ---- Superoperators ----

void spinrtn_superop_free(spinrtn_superop* s) { delete s; }

spinrtn_status spinrtn_superop_get(const spinrtn_superop* s, double* re, double* im) {
  return guarded([&] {
    const auto& m = need(s, "superop").value.matrix();
    need(re, "re");
    need(im, "im");
    for (int i = 0; i < kSuperDim; ++i)
      for (int j = 0; j < kSuperDim; ++j) {
        re[kSuperDim * i + j] = m(i, j).real();
        im[kSuperDim * i + j] = m(i, j).imag();
      }
  });
}

spinrtn_status spinrtn_superop_from_matrix(const double* re, const double* im, spinrtn_superop** out) {
  return guarded([&] {
    need(re, "re");
    need(im, "im");
    Matrix16c m;
    for (int i = 0; i < kSuperDim; ++i)
      for (int j = 0; j < kSuperDim; ++j) m(i, j) = Complex(re[kSuperDim * i + j], im[kSuperDim * i + j]);
    if (!m.allFinite()) throw std::invalid_argument("superoperator entries must be finite");
    emit(out, SuperOperator(m));
  });
}

spinrtn_status spinrtn_superop_multiply(const spinrtn_superop* a, const spinrtn_superop* b, spinrtn_superop** out) {
  return guarded([&] { emit(out, need(a, "a").value * need(b, "b").value); });
}

spinrtn_status spinrtn_superop_apply(const spinrtn_superop* s, const double* rho_re, const double* rho_im,
                                     double* out_re, double* out_im) {
  return guarded([&] {
    const Matrix4c image = need(s, "superop").value.apply(read4(rho_re, rho_im));
    write4(image, out_re, out_im);
  });
}

spinrtn_status spinrtn_superop_kernel(const spinrtn_superop* s, double eigenvalue, double* re, double* im) {
  return guarded([&] {
    const Complex k = kernel_value(need(s, "superop").value, eigenvalue);
    need(re, "re") = k.real();
    need(im, "im") = k.imag();
  });
}

spinrtn_status spinrtn_superop_diagnostics(const spinrtn_superop* s, spinrtn_channel_diagnostics* out) {
  return guarded([&] {
    const auto& v = need(s, "superop").value;
    auto& o = need(out, "out");
    o.trace_error = trace_preservation_error(v);
    o.hermiticity_error = hermiticity_preservation_error(v);
    o.choi_min_eigenvalue = choi_min_eigenvalue(v);
    o.unitarity_error = unitarity_error(v);
  });
}

spinrtn_status spinrtn_superop_compare(const spinrtn_superop* a, const spinrtn_superop* b, spinrtn_compare* out) {
  return guarded([&] {
    const CompareReport r = compare(need(a, "a").value, need(b, "b").value);
    auto& o = need(out, "out");
    o.sup_norm = r.sup_norm;
    o.frobenius = r.frobenius;
    for (int k = 0; k < 3; ++k) o.kernel_delta[k] = r.kernel_delta[static_cast<std::size_t>(k)];
  });
}

spinrtn_status spinrtn_sigma_h(spinrtn_superop** out) {
  return guarded([&] { emit(out, sigma_h()); });
}

spinrtn_status spinrtn_unitary_superop(const double* u_re, const double* u_im, spinrtn_superop** out) {
  return guarded([&] { emit(out, unitary_to_superop(read4(u_re, u_im))); });
}

spinrtn_status spinrtn_named_gate(const char* name, double* u_re, double* u_im) {
  return guarded([&] {
    need(name, "name");
    write4(named_gate(name), u_re, u_im);
  });
}

// ---- Closed forms ----

spinrtn_status spinrtn_kernel(spinrtn_regime regime, double x, double y, double* out) {
  return guarded([&] {
    if (!std::isfinite(x)) throw std::invalid_argument("x must be finite");
    if (!(std::isfinite(y) && y >= 0.0)) throw std::invalid_argument("y must be >= 0");
    need(out, "out") = regime_kernel(to_regime(regime), x, y);
  });
}

spinrtn_status spinrtn_q_nu_value(spinrtn_regime regime, double alpha, double lambda, double t, double* out) {
  return guarded([&] { need(out, "out") = q_nu_value(to_regime(regime), alpha, lambda, t); });
}

spinrtn_status spinrtn_q_unitary(double j0, double t, spinrtn_superop** out) {
  return guarded([&] { emit(out, q_unitary(j0, t)); });
}

spinrtn_status spinrtn_qnu(spinrtn_regime regime, double alpha, double lambda, double t, spinrtn_superop** out) {
  return guarded([&] { emit(out, qnu(to_regime(regime), alpha, lambda, t)); });
}

spinrtn_status spinrtn_q_full(const spinrtn_params* params, double t, spinrtn_form form, spinrtn_superop** out) {
  return guarded([&] { emit(out, q_full(to_params(params), t, to_form(form))); });
}

spinrtn_status spinrtn_lindblad(double alpha, double lambda, spinrtn_superop** out) {
  return guarded([&] { emit(out, lindblad_superoperator(alpha, lambda)); });
}

// ---- Distributions ----

spinrtn_status spinrtn_bessel_i1(double x, double* out) {
  return guarded([&] { need(out, "out") = bessel_i1(x); });
}

spinrtn_status spinrtn_poisson_weight(unsigned k, double lambda_t, double* out) {
  return guarded([&] { need(out, "out") = poisson_weight(k, lambda_t); });
}

spinrtn_status spinrtn_xi_density(spinrtn_xi_kind kind, double xi, double lambda_t, double* out) {
  return guarded([&] {
    if (!std::isfinite(xi)) throw std::invalid_argument("xi must be finite");
    need(out, "out") = XiDistribution(to_kind(kind), lambda_t).density(xi);
  });
}

spinrtn_status spinrtn_xi_atoms(spinrtn_xi_kind kind, double lambda_t, double* weight_pos, double* weight_neg) {
  return guarded([&] {
    double pos = 0.0;
    double neg = 0.0;
    for (const auto& a : XiDistribution(to_kind(kind), lambda_t).atoms()) (a.location > 0 ? pos : neg) += a.weight;
    need(weight_pos, "weight_pos") = pos;
    need(weight_neg, "weight_neg") = neg;
  });
}

spinrtn_status spinrtn_xi_mass(spinrtn_xi_kind kind, double lambda_t, double abs_tol, double* mass, double* error) {
  return guarded([&] {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
    const auto r = XiDistribution(to_kind(kind), lambda_t).mass(abs_tol);
    need(mass, "mass") = r.value;
    if (error != nullptr) *error = r.error;
  });
}

spinrtn_status spinrtn_xi_leakage(spinrtn_xi_kind kind, double lambda_t, double* out) {
  return guarded([&] { need(out, "out") = XiDistribution(to_kind(kind), lambda_t).leakage(); });
}

// ---- Trajectories ----

spinrtn_status spinrtn_trajectory_sample(const spinrtn_params* params, double duration, uint64_t master_seed,
                                         uint64_t index, spinrtn_trajectory** out) {
  return guarded([&] {
    need(out, "out");
    *out = new spinrtn_trajectory{sample_trajectory(to_params(params), duration, master_seed, index)};
  });
}

void spinrtn_trajectory_free(spinrtn_trajectory* traj) { delete traj; }

spinrtn_status spinrtn_trajectory_info(const spinrtn_trajectory* traj, double* duration, int* initial_sign,
                                       size_t* n_jumps) {
  return guarded([&] {
    const auto& t = need(traj, "trajectory").value;
    if (duration != nullptr) *duration = t.duration();
    if (initial_sign != nullptr) *initial_sign = t.initial_sign();
    if (n_jumps != nullptr) *n_jumps = t.jump_times().size();
  });
}

spinrtn_status spinrtn_trajectory_jumps(const spinrtn_trajectory* traj, double* out, size_t capacity) {
  return guarded([&] {
    const auto& jumps = need(traj, "trajectory").value.jump_times();
    const std::size_t n = std::min(capacity, jumps.size());
    if (n == 0) return;
    need(out, "out");
    std::memcpy(out, jumps.data(), n * sizeof(double));
  });
}

spinrtn_status spinrtn_trajectory_eta(const spinrtn_trajectory* traj, double t, int* out) {
  return guarded([&] { need(out, "out") = eta_at(need(traj, "trajectory").value, t); });
}

spinrtn_status spinrtn_trajectory_xi(const spinrtn_trajectory* traj, double* out) {
  return guarded([&] { need(out, "out") = mean_state_xi(need(traj, "trajectory").value); });
}

spinrtn_status spinrtn_trajectory_superop(const spinrtn_params* params, const spinrtn_trajectory* traj,
                                          spinrtn_superop** out) {
  return guarded([&] { emit(out, trajectory_superoperator(to_params(params), need(traj, "trajectory").value)); });
}

// ---- Ensembles ----

spinrtn_status spinrtn_mc_average(const spinrtn_params* params, double t, uint64_t n, uint64_t master_seed,
                                  unsigned threads, int histogram_bins, spinrtn_ensemble** out) {
  return guarded([&] {
    need(out, "out");
    EnsembleOptions opt;
    opt.threads = threads;
    opt.histogram_bins = histogram_bins;
    *out = new spinrtn_ensemble{mc_average(to_params(params), t, n, master_seed, opt)};
  });
}

spinrtn_status spinrtn_mc_average_multi(const spinrtn_params* fluctuators, size_t count, double t, uint64_t n,
                                        uint64_t master_seed, unsigned threads, spinrtn_ensemble** out) {
  return guarded([&] {
    need(out, "out");
    EnsembleOptions opt;
    opt.threads = threads;
    *out = new spinrtn_ensemble{mc_average_multi(to_list(fluctuators, count), t, n, master_seed, opt)};
  });
}

void spinrtn_ensemble_free(spinrtn_ensemble* e) { delete e; }

spinrtn_status spinrtn_ensemble_summary_get(const spinrtn_ensemble* e, spinrtn_ensemble_summary* out) {
  return guarded([&] {
    const auto& r = need(e, "ensemble").value;
    auto& o = need(out, "out");
    o.n_trajectories = r.n_trajectories;
    o.master_seed = r.master_seed;
    o.standard_error = r.standard_error;
    o.kernel_re = r.kernel_mean.real();
    o.kernel_im = r.kernel_mean.imag();
    o.kernel_standard_error = r.kernel_standard_error;
    o.atom_pos = r.xi_histogram.atom_pos;
    o.atom_neg = r.xi_histogram.atom_neg;
    o.histogram_bins = r.xi_histogram.counts.size();
  });
}

spinrtn_status spinrtn_ensemble_mean(const spinrtn_ensemble* e, spinrtn_superop** out) {
  return guarded([&] { emit(out, need(e, "ensemble").value.mean_superop); });
}

spinrtn_status spinrtn_ensemble_element_se(const spinrtn_ensemble* e, double* out) {
  return guarded([&] {
    const auto& se = need(e, "ensemble").value.element_standard_error;
    need(out, "out");
    for (int i = 0; i < kSuperDim; ++i)
      for (int j = 0; j < kSuperDim; ++j) out[kSuperDim * i + j] = se(i, j);
  });
}

spinrtn_status spinrtn_ensemble_histogram(const spinrtn_ensemble* e, uint64_t* counts, size_t capacity) {
  return guarded([&] {
    const auto& c = need(e, "ensemble").value.xi_histogram.counts;
    const std::size_t n = std::min(capacity, c.size());
    if (n > 0) need(counts, "counts");
    for (std::size_t i = 0; i < n; ++i) counts[i] = c[i];
  });
}

spinrtn_status spinrtn_quadrature_q(const spinrtn_params* params, double t, spinrtn_xi_kind kind, double abs_tol,
                                    spinrtn_superop** out, double* error) {
  return guarded([&] {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be > 0");
    const auto r = quadrature_q(to_params(params), t, to_kind(kind), abs_tol);
    emit(out, r.value);
    if (error != nullptr) *error = r.error;
  });
}

// ---- Composition ----

spinrtn_status spinrtn_product_fluctuators(const spinrtn_params* fluctuators, size_t count, double t,
                                           spinrtn_superop** out) {
  return guarded([&] { emit(out, product_fluctuators(to_list(fluctuators, count), t)); });
}

spinrtn_status spinrtn_weighted_product(const spinrtn_component* components, size_t count, double n_fluctuators,
                                        double j0, double t, spinrtn_superop** out) {
  return guarded([&] {
    if (count > 0) need(components, "components");
    DiscreteSpectrum spec;
    spec.n_fluctuators = n_fluctuators;
    for (std::size_t i = 0; i < count; ++i)
      spec.components.push_back({components[i].alpha, components[i].lambda, components[i].weight});
    emit(out, weighted_product(spec, j0, t));
  });
}

spinrtn_status spinrtn_spectral_compose(const spinrtn_spectrum* spectrum, double j0, double t, spinrtn_superop** out) {
  return guarded([&] { emit(out, spectral_compose(to_spectrum(spectrum), j0, t)); });
}

spinrtn_status spinrtn_spectral_discrete_compose(const spinrtn_spectrum* spectrum, int points, double j0, double t,
                                                 spinrtn_superop** out) {
  return guarded([&] { emit(out, weighted_product(discretize(to_spectrum(spectrum), points), j0, t)); });
}

spinrtn_status spinrtn_spectrum_mean_inverse_lambda(const spinrtn_spectrum* spectrum, double* out) {
  return guarded([&] {
    const auto s = to_spectrum(spectrum);
    s.validate();
    need(out, "out") = s.mean_inverse_lambda();
  });
}

// ---- Sequences ----

spinrtn_status spinrtn_sequence_create(spinrtn_sequence** out) {
  return guarded([&] {
    need(out, "out");
    *out = new spinrtn_sequence{};
  });
}

void spinrtn_sequence_free(spinrtn_sequence* seq) { delete seq; }

spinrtn_status spinrtn_sequence_add_noise(spinrtn_sequence* seq, double t) {
  return guarded([&] {
    auto& s = need(seq, "sequence");
    if (!(std::isfinite(t) && t >= 0.0)) throw std::invalid_argument("noise duration must be >= 0");
    s.segments.push_back(Segment::noise(t));
  });
}

spinrtn_status spinrtn_sequence_add_gate(spinrtn_sequence* seq, const double* u_re, const double* u_im,
                                         double duration) {
  return guarded([&] {
    auto& s = need(seq, "sequence");
    const Matrix4c u = read4(u_re, u_im);
    unitary_to_superop(u);  // rejects non-unitary input now rather than at evaluation
    if (!(std::isfinite(duration) && duration >= 0.0)) throw std::invalid_argument("gate duration must be >= 0");
    s.segments.push_back(Segment::gate(u, duration));
  });
}

spinrtn_status spinrtn_sequence_add_named_gate(spinrtn_sequence* seq, const char* name, double duration) {
  return guarded([&] {
    auto& s = need(seq, "sequence");
    need(name, "name");
    if (!(std::isfinite(duration) && duration >= 0.0)) throw std::invalid_argument("gate duration must be >= 0");
    s.segments.push_back(Segment::gate(named_gate(name), duration));
  });
}

spinrtn_status spinrtn_sequence_length(const spinrtn_sequence* seq, size_t* out) {
  return guarded([&] { need(out, "out") = need(seq, "sequence").segments.size(); });
}

spinrtn_status spinrtn_sequence_evaluate(const spinrtn_sequence* seq, const spinrtn_params* params,
                                         spinrtn_sequence_result** out) {
  return guarded([&] {
    need(out, "out");
    *out = new spinrtn_sequence_result{corrected_sequence(need(seq, "sequence").segments, to_params(params))};
  });
}

void spinrtn_sequence_result_free(spinrtn_sequence_result* r) { delete r; }

spinrtn_status spinrtn_sequence_result_part(const spinrtn_sequence_result* r, spinrtn_sequence_part part,
                                            spinrtn_superop** out) {
  return guarded([&] {
    const auto& v = need(r, "result").value;
    switch (part) {
      case SPINRTN_PART_RAW: emit(out, v.raw); return;
      case SPINRTN_PART_CORRECTED: emit(out, v.corrected); return;
      case SPINRTN_PART_CROSS_TERMS: emit(out, v.removed_cross_terms); return;
      case SPINRTN_PART_RAW_NO_FLUCT: emit(out, v.raw_no_fluct); return;
      case SPINRTN_PART_CORRECTED_NO_FLUCT: emit(out, v.corrected_no_fluct); return;
    }
    throw std::invalid_argument("unknown sequence part");
  });
}

spinrtn_status spinrtn_sequence_result_weights(const spinrtn_sequence_result* r, double* p0, double* p_gt0,
                                               double* t_total) {
  return guarded([&] {
    const auto& v = need(r, "result").value;
    if (p0 != nullptr) *p0 = v.p0;
    if (p_gt0 != nullptr) *p_gt0 = v.p_gt0;
    if (t_total != nullptr) *t_total = v.t_total;
  });
}

size_t spinrtn_sequence_result_note_count(const spinrtn_sequence_result* r) {
  return r == nullptr ? 0 : r->value.notes.size();
}

const char* spinrtn_sequence_result_note(const spinrtn_sequence_result* r, size_t i) {
  if (r == nullptr || i >= r->value.notes.size()) return nullptr;
  return r->value.notes[i].c_str();
}

spinrtn_status spinrtn_sequence_mc(const spinrtn_sequence* seq, const spinrtn_params* params, uint64_t n,
                                   uint64_t master_seed, unsigned threads, spinrtn_superop** mean,
                                   double* standard_error, double* element_se) {
  return guarded([&] {
    const auto r = mc_sequence(need(seq, "sequence").segments, to_params(params), n, master_seed, threads);
    emit(mean, r.mean);
    if (standard_error != nullptr) *standard_error = r.standard_error;
    if (element_se != nullptr)
      for (int i = 0; i < kSuperDim; ++i)
        for (int j = 0; j < kSuperDim; ++j) element_se[kSuperDim * i + j] = r.element_standard_error(i, j);
  });
}

}  // extern "C"
