// spinrtn command-line tool. Talks to the library only through spinrtn.h.

#include <algorithm>
#include <array>
#include <charconv>
#include <complex>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <exception>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinrtn/spinrtn.h"

using json = nlohmann::ordered_json;

namespace {

// Validation failures: exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kExitValidation = 1;
constexpr int kExitThreshold = 2;

void check(spinrtn_status status) {
  if (status != SPINRTN_OK) throw UsageError(spinrtn_last_error());
}

struct SuperopDeleter {
  void operator()(spinrtn_superop* s) const { spinrtn_superop_free(s); }
};
using Superop = std::unique_ptr<spinrtn_superop, SuperopDeleter>;

Superop take(spinrtn_superop* s) { return Superop(s); }

std::string num(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

// ---- Settings --------------------------------------------------------------

struct Settings {
  double alpha = 1.0;
  double j0 = 1.0;
  double lambda = 1.0;
  double t = 1.0;
  double lambda_t = 1.0;
  std::uint64_t n = 20000;
  std::uint64_t seed = 42;
  std::string out;
  std::string form = "exact";
  std::uint64_t mc_oracle = 0;
  std::string config;
  int points = 0;  // 0: command default
  unsigned threads = 1;
  bool quadrature = false;
  std::string segments;
  std::string report;
  json file = json::object();  // structured config, for spectrum and segments
};

spinrtn_params params_of(const Settings& s) { return {s.j0, s.alpha, s.lambda}; }

spinrtn_form form_of(const Settings& s) {
  if (s.form == "exact") return SPINRTN_FORM_EXACT;
  if (s.form == "approx") return SPINRTN_FORM_APPROX;
  throw UsageError("form must be 'exact' or 'approx' (got '" + s.form + "')");
}

// Copies keys from the config file unless the matching flag was given.
void merge_config(Settings& s, const CLI::App& app) {
  if (s.config.empty()) return;
  std::ifstream in(s.config);
  if (!in) throw UsageError("config: cannot open '" + s.config + "'");
  try {
    s.file = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
  if (!s.file.is_object()) throw UsageError("config: top level must be an object");

  auto take_value = [&](const char* key, const char* flag, auto& field) {
    if (!s.file.contains(key) || app.count(flag) > 0) return;
    try {
      s.file.at(key).get_to(field);
    } catch (const json::exception&) {
      throw UsageError(std::string("config: field '") + key + "' has the wrong type");
    }
  };
  take_value("alpha", "--alpha", s.alpha);
  take_value("j0", "--j0", s.j0);
  take_value("lambda", "--lambda", s.lambda);
  take_value("t", "--t", s.t);
  take_value("lambda_t", "--lambda-t", s.lambda_t);
  take_value("n", "--n", s.n);
  take_value("seed", "--seed", s.seed);
  take_value("out", "--out", s.out);
  take_value("form", "--form", s.form);
  take_value("mc_oracle", "--mc-oracle", s.mc_oracle);
  take_value("points", "--points", s.points);
  take_value("threads", "--threads", s.threads);
}

json resolved(const Settings& s, const std::string& command) {
  json j;
  j["command"] = command;
  j["alpha"] = s.alpha;
  j["j0"] = s.j0;
  j["lambda"] = s.lambda;
  j["t"] = s.t;
  j["lambda_t"] = s.lambda_t;
  j["n"] = s.n;
  j["seed"] = s.seed;
  j["form"] = s.form;
  j["mc_oracle"] = s.mc_oracle;
  j["points"] = s.points;
  j["threads"] = s.threads;
  if (s.file.contains("spectrum")) j["spectrum"] = s.file["spectrum"];
  if (s.file.contains("segments")) j["segments"] = s.file["segments"];
  if (!s.segments.empty()) j["segments_flag"] = s.segments;
  return j;
}

// ---- Output ----------------------------------------------------------------

// Buffered so that a command failing half way leaves no partial table behind.
class Output {
public:
  explicit Output(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("out: cannot open '" + path + "' for writing");
    }
  }
  ~Output() {
    if (std::uncaught_exceptions() > 0) return;
    (file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout) << buffer_.str() << std::flush;
  }
  std::ostream& stream() { return buffer_; }

private:
  std::string path_;
  std::ofstream file_;
  std::ostringstream buffer_;
};

void write_header(std::ostream& os, const Settings& s, const std::string& command) {
  os << "# spinrtn " << spinrtn_version() << "\n";
  os << "# config: " << resolved(s, command).dump() << "\n";
  os << "# seed: " << s.seed << "\n";
}

void write_superop_columns(std::ostream& os) {
  os << "part";
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) os << ",re_" << i << "_" << j << ",im_" << i << "_" << j;
  os << "\n";
}

void write_superop_row(std::ostream& os, const std::string& label, const spinrtn_superop* s) {
  std::vector<double> re(256);
  std::vector<double> im(256);
  check(spinrtn_superop_get(s, re.data(), im.data()));
  os << label;
  for (int k = 0; k < 256; ++k) os << "," << num(re[k]) << "," << num(im[k]);
  os << "\n";
}

json kernel_summary(const spinrtn_superop* s) {
  json j = json::object();
  for (double e : {-4.0, 0.0, 4.0}) {
    double re = 0.0;
    double im = 0.0;
    check(spinrtn_superop_kernel(s, e, &re, &im));
    j[num(e)] = {re, im};
  }
  return j;
}

json diagnostics(const spinrtn_superop* s) {
  spinrtn_channel_diagnostics d{};
  check(spinrtn_superop_diagnostics(s, &d));
  return {{"trace_error", d.trace_error},
          {"hermiticity_error", d.hermiticity_error},
          {"choi_min_eigenvalue", d.choi_min_eigenvalue}};
}

json compare_json(const spinrtn_superop* a, const spinrtn_superop* b) {
  spinrtn_compare c{};
  check(spinrtn_superop_compare(a, b, &c));
  return {{"sup_norm", c.sup_norm},
          {"frobenius", c.frobenius},
          {"kernel_delta", {{"-4", c.kernel_delta[0]}, {"0", c.kernel_delta[1]}, {"4", c.kernel_delta[2]}}}};
}

std::vector<double> grid(double hi, int points) {
  if (points < 1) throw UsageError("points must be >= 1");
  std::vector<double> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = points == 1 ? hi : hi * i / (points - 1);
  return g;
}

// ---- Commands --------------------------------------------------------------

int cmd_trajectory(const Settings& s) {
  const spinrtn_params p = params_of(s);
  Output out(s.out);
  auto& os = out.stream();
  write_header(os, s, "trajectory");
  os << "index,duration,initial_sign,jump_times\n";
  for (std::uint64_t k = 0; k < s.n; ++k) {
    spinrtn_trajectory* traj = nullptr;
    check(spinrtn_trajectory_sample(&p, s.t, s.seed, k, &traj));
    std::unique_ptr<spinrtn_trajectory, void (*)(spinrtn_trajectory*)> guard(traj, spinrtn_trajectory_free);
    double duration = 0.0;
    int sign = 0;
    std::size_t jumps = 0;
    check(spinrtn_trajectory_info(traj, &duration, &sign, &jumps));
    std::vector<double> times(jumps);
    check(spinrtn_trajectory_jumps(traj, times.data(), times.size()));
    os << k << "," << num(duration) << "," << sign << ",";
    for (std::size_t i = 0; i < jumps; ++i) os << (i ? ";" : "") << num(times[i]);
    os << "\n";
  }
  return 0;
}

int cmd_pdf(const Settings& s) {
  const int points = s.points > 0 ? s.points : 201;
  if (points < 2) throw UsageError("points must be >= 2");
  const double y = s.lambda_t;
  Output out(s.out);
  auto& os = out.stream();
  write_header(os, s, "pdf");
  double pos = 0.0;
  double neg = 0.0;
  check(spinrtn_xi_atoms(SPINRTN_XI_EXACT_FULL, y, &pos, &neg));
  os << "xi,omega_exact,omega_ge1,omega_slow,omega_fast,omega_approx,atom_weight_pos,atom_weight_neg\n";
  const std::array<spinrtn_xi_kind, 5> kinds = {SPINRTN_XI_EXACT_FULL, SPINRTN_XI_EXACT_GE1, SPINRTN_XI_UNIFORM_SLOW,
                                                SPINRTN_XI_GAUSSIAN_FAST, SPINRTN_XI_APPROX_FULL};
  for (int i = 0; i < points; ++i) {
    const double xi = -1.0 + 2.0 * i / (points - 1);
    os << num(xi);
    for (auto k : kinds) {
      double v = 0.0;
      check(spinrtn_xi_density(k, xi, y, &v));
      os << "," << num(v);
    }
    os << "," << num(pos) << "," << num(neg) << "\n";
  }

  double mass_exact = 0.0;
  double mass_approx = 0.0;
  double leak = 0.0;
  check(spinrtn_xi_mass(SPINRTN_XI_EXACT_FULL, y, 1e-10, &mass_exact, nullptr));
  check(spinrtn_xi_mass(SPINRTN_XI_APPROX_FULL, y, 1e-10, &mass_approx, nullptr));
  check(spinrtn_xi_leakage(SPINRTN_XI_APPROX_FULL, y, &leak));
  std::cerr << "mass exact_full = " << num(mass_exact) << " (|1 - mass| = " << num(std::abs(1.0 - mass_exact))
            << ")\n"
            << "mass approx_full = " << num(mass_approx) << ", of which outside [-1, 1]: " << num(leak) << "\n";
  return 0;
}

int cmd_superop(const Settings& s) {
  const int points = s.points > 0 ? s.points : 101;
  const spinrtn_params p = params_of(s);
  Output out(s.out);
  auto& os = out.stream();
  write_header(os, s, "superop");
  os << "t,lambda_T,QNU_exact,QNU_approx,QNU_zero,QNU_slow,QNU_fast";
  if (s.mc_oracle > 0) os << ",QNU_mc,QNU_mc_se";
  if (s.quadrature) os << ",QNU_quadrature";
  os << "\n";
  const std::array<spinrtn_regime, 5> regimes = {SPINRTN_REGIME_EXACT, SPINRTN_REGIME_APPROX, SPINRTN_REGIME_NO_FLUCT,
                                                 SPINRTN_REGIME_SLOW, SPINRTN_REGIME_FAST};
  for (double t : grid(s.t, points)) {
    os << num(t) << "," << num(s.lambda * t);
    for (auto r : regimes) {
      double v = 0.0;
      check(spinrtn_q_nu_value(r, s.alpha, s.lambda, t, &v));
      os << "," << num(v);
    }
    if (s.mc_oracle > 0) {
      double k = 1.0;
      double se = 0.0;
      if (t > 0.0) {
        spinrtn_ensemble* e = nullptr;
        check(spinrtn_mc_average(&p, t, s.mc_oracle, s.seed, s.threads, 50, &e));
        spinrtn_ensemble_summary sum{};
        const auto st = spinrtn_ensemble_summary_get(e, &sum);
        spinrtn_ensemble_free(e);
        check(st);
        k = sum.kernel_re;
        se = sum.kernel_standard_error;
      }
      os << "," << num(k) << "," << num(se);
    }
    if (s.quadrature) {
      double k = 1.0;
      if (t > 0.0) {
        spinrtn_superop* q = nullptr;
        check(spinrtn_quadrature_q(&p, t, SPINRTN_XI_EXACT_FULL, 1e-10, &q, nullptr));
        auto guard = take(q);
        // The unitary factor is divided out so the column is comparable.
        double re = 0.0;
        double im = 0.0;
        check(spinrtn_superop_kernel(q, 4.0, &re, &im));
        k = std::real(std::complex<double>(re, im) * std::exp(std::complex<double>(0.0, 4.0 * s.j0 * t)));
      }
      os << "," << num(k);
    }
    os << "\n";
  }
  return 0;
}

int cmd_montecarlo(const Settings& s) {
  const spinrtn_params p = params_of(s);
  spinrtn_ensemble* e = nullptr;
  check(spinrtn_mc_average(&p, s.t, s.n, s.seed, s.threads, 50, &e));
  std::unique_ptr<spinrtn_ensemble, void (*)(spinrtn_ensemble*)> guard(e, spinrtn_ensemble_free);
  spinrtn_ensemble_summary sum{};
  check(spinrtn_ensemble_summary_get(e, &sum));
  spinrtn_superop* mean = nullptr;
  check(spinrtn_ensemble_mean(e, &mean));
  auto mean_guard = take(mean);

  Output out(s.out);
  auto& os = out.stream();
  write_header(os, s, "montecarlo");
  write_superop_columns(os);
  write_superop_row(os, "mc_mean", mean);

  std::vector<std::uint64_t> hist(sum.histogram_bins);
  check(spinrtn_ensemble_histogram(e, hist.data(), hist.size()));
  json rep;
  rep["version"] = spinrtn_version();
  rep["config"] = resolved(s, "montecarlo");
  rep["n_trajectories"] = sum.n_trajectories;
  rep["master_seed"] = sum.master_seed;
  rep["standard_error"] = sum.standard_error;
  rep["q_nu_mc"] = {sum.kernel_re, sum.kernel_im};
  rep["q_nu_mc_standard_error"] = sum.kernel_standard_error;
  rep["xi_histogram"] = {{"bins", hist}, {"atom_pos", sum.atom_pos}, {"atom_neg", sum.atom_neg}};
  rep["channel"] = diagnostics(mean);
  if (!s.report.empty()) {
    std::ofstream r(s.report);
    if (!r) throw UsageError("report: cannot open '" + s.report + "'");
    r << rep.dump(2) << "\n";
  }
  std::cerr << "standard error (element-wise max) = " << num(sum.standard_error) << "\n";
  return 0;
}

int cmd_compare(const Settings& s) {
  const spinrtn_params p = params_of(s);
  spinrtn_superop* analytic = nullptr;
  check(spinrtn_q_full(&p, s.t, form_of(s), &analytic));
  auto analytic_guard = take(analytic);

  json rep;
  rep["version"] = spinrtn_version();
  rep["config"] = resolved(s, "compare");

  spinrtn_superop* quad = nullptr;
  check(spinrtn_quadrature_q(&p, s.t, s.form == "exact" ? SPINRTN_XI_EXACT_FULL : SPINRTN_XI_APPROX_FULL, 1e-10,
                             &quad, nullptr));
  auto quad_guard = take(quad);
  rep["analytic_vs_quadrature"] = compare_json(analytic, quad);

  if (s.n > 0) {
    spinrtn_ensemble* e = nullptr;
    check(spinrtn_mc_average(&p, s.t, s.n, s.seed, s.threads, 50, &e));
    std::unique_ptr<spinrtn_ensemble, void (*)(spinrtn_ensemble*)> guard(e, spinrtn_ensemble_free);
    spinrtn_ensemble_summary sum{};
    check(spinrtn_ensemble_summary_get(e, &sum));
    spinrtn_superop* mean = nullptr;
    check(spinrtn_ensemble_mean(e, &mean));
    auto mean_guard = take(mean);
    json c = compare_json(analytic, mean);
    c["standard_error"] = sum.standard_error;
    c["within_3_standard_errors"] = c["sup_norm"].get<double>() <= 3.0 * sum.standard_error;
    rep["analytic_vs_montecarlo"] = c;
  }
  Output out(s.out);
  out.stream() << rep.dump(2) << "\n";
  return 0;
}

// Spectrum config: {kind, alpha_spec, lambda_min, lambda_max, N} or, for
// kind = "discrete", {components: [{alpha, lambda, weight}], N}.
int cmd_compose(const Settings& s) {
  if (!s.file.contains("spectrum")) throw UsageError("spectrum: compose needs a 'spectrum' object in --config");
  const json& sp = s.file.at("spectrum");
  auto field = [&](const char* key) -> const json& {
    if (!sp.contains(key)) throw UsageError(std::string("spectrum.") + key + " is required");
    return sp.at(key);
  };
  const std::string kind = field("kind").get<std::string>();
  const double n_fluct = field("N").get<double>();

  Superop result;
  spinrtn_superop* raw = nullptr;
  if (kind == "discrete") {
    std::vector<spinrtn_component> comps;
    for (const auto& c : field("components")) {
      comps.push_back({c.at("alpha").get<double>(), c.at("lambda").get<double>(), c.at("weight").get<double>()});
    }
    check(spinrtn_weighted_product(comps.data(), comps.size(), n_fluct, s.j0, s.t, &raw));
  } else {
    spinrtn_spectrum spec{};
    if (kind == "point") {
      spec.lambda_law = SPINRTN_LAMBDA_POINT;
    } else if (kind == "uniform") {
      spec.lambda_law = SPINRTN_LAMBDA_UNIFORM;
    } else if (kind == "log_uniform") {
      spec.lambda_law = SPINRTN_LAMBDA_LOG_UNIFORM;
    } else {
      throw UsageError("spectrum.kind must be discrete, point, uniform or log_uniform (got '" + kind + "')");
    }
    spec.lambda_min = field("lambda_min").get<double>();
    spec.lambda_max = sp.value("lambda_max", spec.lambda_min);
    spec.n_fluctuators = n_fluct;
    const json& a = field("alpha_spec");
    std::vector<double> values;
    std::vector<double> weights;
    if (a.is_number()) {
      spec.alpha_law = SPINRTN_ALPHA_CONSTANT;
      spec.alpha_min = a.get<double>();
    } else if (a.value("kind", "") == "uniform") {
      spec.alpha_law = SPINRTN_ALPHA_UNIFORM;
      spec.alpha_min = a.at("min").get<double>();
      spec.alpha_max = a.at("max").get<double>();
    } else if (a.value("kind", "") == "tabulated") {
      spec.alpha_law = SPINRTN_ALPHA_TABULATED;
      values = a.at("values").get<std::vector<double>>();
      weights = a.at("weights").get<std::vector<double>>();
      if (values.size() != weights.size()) throw UsageError("spectrum.alpha_spec: values and weights differ in length");
      spec.alpha_values = values.data();
      spec.alpha_weights = weights.data();
      spec.alpha_count = values.size();
    } else {
      throw UsageError("spectrum.alpha_spec must be a number or {kind: uniform|tabulated, ...}");
    }
    check(spinrtn_spectral_compose(&spec, s.j0, s.t, &raw));
  }
  result = take(raw);

  Output out(s.out);
  auto& os = out.stream();
  write_header(os, s, "compose");
  write_superop_columns(os);
  write_superop_row(os, "composed", result.get());
  std::cerr << "kernels: " << kernel_summary(result.get()).dump() << "\n";
  return 0;
}

// "noise:1,gate:X1,noise:1" or "gate:H1:0.1" (name and duration).
void segments_from_flag(spinrtn_sequence* seq, const std::string& spec) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string p;
    while (std::getline(is, p, ':')) parts.push_back(p);
    if (parts.size() == 2 && parts[0] == "noise") {
      check(spinrtn_sequence_add_noise(seq, std::stod(parts[1])));
    } else if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "gate") {
      check(spinrtn_sequence_add_named_gate(seq, parts[1].c_str(), parts.size() == 3 ? std::stod(parts[2]) : 0.0));
    } else {
      throw UsageError("segments: cannot parse '" + item + "'");
    }
  }
}

void segments_from_json(spinrtn_sequence* seq, const json& list) {
  if (!list.is_array()) throw UsageError("segments must be an array");
  for (const auto& seg : list) {
    const std::string type = seg.value("type", "");
    const double t = seg.value("t", 0.0);
    if (type == "noise") {
      check(spinrtn_sequence_add_noise(seq, t));
    } else if (type == "gate") {
      if (!seg.contains("unitary")) throw UsageError("segments: gate needs 'unitary'");
      const json& u = seg.at("unitary");
      if (u.is_string()) {
        check(spinrtn_sequence_add_named_gate(seq, u.get<std::string>().c_str(), t));
      } else {
        // 4x4 rows of numbers or [re, im] pairs.
        std::array<double, 16> re{};
        std::array<double, 16> im{};
        if (!u.is_array() || u.size() != 4) throw UsageError("segments: unitary must be a name or a 4x4 array");
        for (int i = 0; i < 4; ++i) {
          if (!u[i].is_array() || u[i].size() != 4) throw UsageError("segments: unitary rows must have 4 entries");
          for (int j = 0; j < 4; ++j) {
            const json& x = u[i][j];
            if (x.is_array()) {
              re[4 * i + j] = x.at(0).get<double>();
              im[4 * i + j] = x.at(1).get<double>();
            } else {
              re[4 * i + j] = x.get<double>();
            }
          }
        }
        check(spinrtn_sequence_add_gate(seq, re.data(), im.data(), t));
      }
    } else {
      throw UsageError("segments: type must be 'noise' or 'gate' (got '" + type + "')");
    }
  }
}

int cmd_sequence(const Settings& s) {
  spinrtn_sequence* seq = nullptr;
  check(spinrtn_sequence_create(&seq));
  std::unique_ptr<spinrtn_sequence, void (*)(spinrtn_sequence*)> guard(seq, spinrtn_sequence_free);
  if (!s.segments.empty()) {
    segments_from_flag(seq, s.segments);
  } else if (s.file.contains("segments")) {
    segments_from_json(seq, s.file.at("segments"));
  } else {
    throw UsageError("segments: give --segments or a 'segments' array in --config");
  }

  const spinrtn_params p = params_of(s);
  spinrtn_sequence_result* res = nullptr;
  check(spinrtn_sequence_evaluate(seq, &p, &res));
  std::unique_ptr<spinrtn_sequence_result, void (*)(spinrtn_sequence_result*)> rguard(res,
                                                                                      spinrtn_sequence_result_free);
  auto part = [&](spinrtn_sequence_part which) {
    spinrtn_superop* x = nullptr;
    check(spinrtn_sequence_result_part(res, which, &x));
    return take(x);
  };
  Superop raw = part(SPINRTN_PART_RAW);
  Superop corrected = part(SPINRTN_PART_CORRECTED);
  Superop cross = part(SPINRTN_PART_CROSS_TERMS);

  Output out(s.out);
  auto& os = out.stream();
  write_header(os, s, "sequence");
  double p0 = 0.0;
  double pg = 0.0;
  double total = 0.0;
  check(spinrtn_sequence_result_weights(res, &p0, &pg, &total));
  os << "# p0: " << num(p0) << " p_gt0: " << num(pg) << " t_total: " << num(total) << "\n";
  for (std::size_t i = 0; i < spinrtn_sequence_result_note_count(res); ++i)
    os << "# note: " << spinrtn_sequence_result_note(res, i) << "\n";
  write_superop_columns(os);
  write_superop_row(os, "raw", raw.get());
  write_superop_row(os, "corrected", corrected.get());
  write_superop_row(os, "cross_terms", cross.get());

  if (s.mc_oracle > 0) {
    spinrtn_superop* mean = nullptr;
    double se = 0.0;
    check(spinrtn_sequence_mc(seq, &p, s.mc_oracle, s.seed, s.threads, &mean, &se, nullptr));
    Superop oracle = take(mean);
    write_superop_row(os, "mc_oracle", oracle.get());
    json rep;
    rep["raw_vs_oracle"] = compare_json(raw.get(), oracle.get());
    rep["corrected_vs_oracle"] = compare_json(corrected.get(), oracle.get());
    rep["oracle_standard_error"] = se;
    rep["oracle_n"] = s.mc_oracle;
    rep["seed"] = s.seed;
    std::cerr << rep.dump(2) << "\n";
  }
  return 0;
}

int cmd_reproduce_fig1(Settings s) {
  const int points = s.points > 0 ? s.points : 101;
  const std::array<double, 4> rates = {0.2, 1.0, 5.0, 20.0};
  Output out(s.out);
  auto& os = out.stream();
  write_header(os, s, "reproduce-fig1");
  os << "lambda_T,t,QNU_exact,QNU_approx,QNU_zero,QNU_slow,QNU_fast,QNU_mc,QNU_mc_se\n";

  bool all_pass = true;
  std::array<double, 4> approx_dev{};
  std::ostringstream summary;
  for (std::size_t r = 0; r < rates.size(); ++r) {
    const double y = rates[r];
    double worst_excess = -1e300;
    double worst_dev = 0.0;
    for (double t : grid(s.t, points)) {
      // lambda T stays fixed along a curve: kernels at (x = 4 alpha t, y).
      const double x = 4.0 * s.alpha * t;
      double k[5] = {};
      const std::array<spinrtn_regime, 5> regimes = {SPINRTN_REGIME_EXACT, SPINRTN_REGIME_APPROX,
                                                     SPINRTN_REGIME_NO_FLUCT, SPINRTN_REGIME_SLOW,
                                                     SPINRTN_REGIME_FAST};
      for (std::size_t i = 0; i < regimes.size(); ++i) check(spinrtn_kernel(regimes[i], x, y, &k[i]));
      double mc = 1.0;  // at t = 0 every history gives the identity
      double se = 0.0;
      if (t > 0.0) {
        const spinrtn_params p{s.j0, s.alpha, y / t};
        spinrtn_ensemble* e = nullptr;
        check(spinrtn_mc_average(&p, t, s.n, s.seed, s.threads, 50, &e));
        spinrtn_ensemble_summary sum{};
        const auto st = spinrtn_ensemble_summary_get(e, &sum);
        spinrtn_ensemble_free(e);
        check(st);
        mc = sum.kernel_re;
        se = sum.kernel_standard_error;
      }
      const double dev = std::abs(k[0] - mc);
      worst_dev = std::max(worst_dev, dev);
      worst_excess = std::max(worst_excess, dev - std::max(3.0 * se, 0.02));
      approx_dev[r] = std::max(approx_dev[r], std::abs(k[1] - k[0]));
      os << num(y) << "," << num(t);
      for (double v : k) os << "," << num(v);
      os << "," << num(mc) << "," << num(se) << "\n";
    }
    const bool pass = worst_excess <= 0.0;
    all_pass = all_pass && pass;
    summary << (pass ? "PASS" : "FAIL") << " lambda_T=" << num(y) << " exact vs mc: max |dev| = " << num(worst_dev)
            << " (bound max(3 se, 0.02) per point)\n";
  }
  const auto largest = std::max_element(approx_dev.begin(), approx_dev.end()) - approx_dev.begin();
  const bool shape = rates[static_cast<std::size_t>(largest)] == 1.0;
  all_pass = all_pass && shape;
  summary << (shape ? "PASS" : "FAIL") << " approx deviation largest at lambda_T=1:";
  for (std::size_t r = 0; r < rates.size(); ++r) summary << " " << num(rates[r]) << "->" << num(approx_dev[r]);
  summary << "\n";
  std::cerr << summary.str();
  return all_pass ? 0 : kExitThreshold;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two exchange-coupled spins under random telegraph noise"};
  app.set_version_flag("--version", spinrtn_version());
  app.require_subcommand(1);

  Settings s;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--alpha", s.alpha, "Noise amplitude alpha (1/time)");
    sub->add_option("--j0", s.j0, "Bare exchange J0 (1/time)");
    sub->add_option("--lambda", s.lambda, "Switching rate lambda (1/time)");
    sub->add_option("--t", s.t, "Evolution time (grid end for table commands)");
    sub->add_option("--lambda-t", s.lambda_t, "Dimensionless lambda T");
    sub->add_option("--n", s.n, "Number of trajectories");
    sub->add_option("--seed", s.seed, "Master seed");
    sub->add_option("--out", s.out, "Output path (default stdout)");
    sub->add_option("--form", s.form, "exact or approx");
    sub->add_option("--mc-oracle", s.mc_oracle, "Monte Carlo oracle size (0 = off)");
    sub->add_option("--config", s.config, "JSON config file; flags override it");
    sub->add_option("--points", s.points, "Grid points");
    sub->add_option("--threads", s.threads, "Worker threads (0 = all cores)");
  };

  struct Command {
    const char* name;
    const char* help;
  };
  const std::vector<Command> commands = {
      {"trajectory", "Sample telegraph trajectories (CSV)"},
      {"pdf", "Tabulate the xi densities (CSV)"},
      {"superop", "Tabulate Q_NU against t (CSV)"},
      {"montecarlo", "Monte Carlo mean superoperator (CSV + JSON report)"},
      {"compare", "Closed form vs quadrature and Monte Carlo (JSON)"},
      {"compose", "Compose many fluctuators from a spectrum config (CSV)"},
      {"sequence", "Gate sequence with cross-term correction (CSV)"},
      {"reproduce-fig1", "Q_NU comparison table for lambda T in {0.2, 1, 5, 20} with checks"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    subs.push_back(sub);
  }
  subs[2]->add_flag("--quadrature", s.quadrature, "Add a quadrature column");
  subs[3]->add_option("--report", s.report, "Write the JSON report here");
  subs[6]->add_option("--segments", s.segments, "e.g. noise:1,gate:X1,noise:1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  CLI::App* chosen = nullptr;
  for (auto* sub : subs)
    if (sub->parsed()) chosen = sub;
  const std::string name = chosen->get_name();

  try {
    merge_config(s, *chosen);
    if (name == "reproduce-fig1") {
      // Representative figure parameters unless overridden.
      if (chosen->count("--alpha") == 0 && !s.file.contains("alpha")) s.alpha = 1.0;
      if (chosen->count("--j0") == 0 && !s.file.contains("j0")) s.j0 = 1.0;
      if (chosen->count("--t") == 0 && !s.file.contains("t")) s.t = 5.0;
    }
    if (name == "trajectory" && chosen->count("--n") == 0 && !s.file.contains("n")) s.n = 10;
    if (name == "trajectory") return cmd_trajectory(s);
    if (name == "pdf") return cmd_pdf(s);
    if (name == "superop") return cmd_superop(s);
    if (name == "montecarlo") return cmd_montecarlo(s);
    if (name == "compare") return cmd_compare(s);
    if (name == "compose") return cmd_compose(s);
    if (name == "sequence") return cmd_sequence(s);
    return cmd_reproduce_fig1(s);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
