#include "splitlab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "splitlab/bch.hpp"
#include "splitlab/dynamics.hpp"
#include "splitlab/scheme_io.hpp"
#include "splitlab/synthesis.hpp"
#include "splitlab/theorem.hpp"

namespace splitlab::cli {

namespace {

using io::Json;
using io::NumericMode;
using io::scalar_json;

constexpr const char* kModeEnv = "SPLITLAB_MODE";
constexpr unsigned kDefaultSeed = 20240601;

NumericMode default_mode() {
  if (const char* env = std::getenv(kModeEnv); env && *env) return io::parse_mode(env);
  return NumericMode::rational;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) {
    if (s.find('/') != std::string::npos) {
      out.push_back(to_double(parse_rational(s)));
    } else {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size()) throw Error(ErrorCode::parse_error, "not a number: \"" + s + "\"");
      out.push_back(x);
    }
  }
  return out;
}

// ---------------------------------------------------------------- reports

template <class S>
Json report_json(const TheoremReport<S>& r) {
  Json j;
  j["part"] = std::string(to_string(r.part));
  j["applicable"] = true;
  j["bound_rhs"] = scalar_json(r.bound_rhs);
  j["actual_lhs"] = scalar_json(r.actual_lhs);
  j["gap"] = scalar_json(r.gap);
  j["satisfied"] = r.satisfied;
  j["degenerate"] = r.degenerate;
  j["delta"] = scalar_json(r.delta);
  j["correctability_residual"] = scalar_json(r.correctability_residual);
  j["fundamental_lhs"] = scalar_json(r.fundamental_lhs);
  j["fundamental_rhs"] = scalar_json(r.fundamental_rhs);
  j["corollary_bound"] = r.corollary_bound ? scalar_json(*r.corollary_bound) : Json(nullptr);
  if (r.degenerate) {
    j["forced_coefficient"] =
        scalar_json(r.part == Part::A ? r.coefficients.e_TTV : r.coefficients.e_VTV);
  }
  return j;
}

template <class S>
Json corollary_json(const CorollaryResult<S>& c) {
  Json j;
  j["part"] = std::string(to_string(c.part));
  j["bound"] = scalar_json(c.bound);
  j["actual"] = scalar_json(c.actual);
  j["gap"] = scalar_json(c.gap);
  j["satisfied"] = c.satisfied;
  j["equality"] = is_zero(c.gap);
  return j;
}

template <class S>
Json analyze_json(const BasicScheme<S>& s, NumericMode mode) {
  Json j;
  j["label"] = s.label();
  j["kind"] = std::string(to_string(s.kind()));
  j["mode"] = std::string(io::to_string(mode));
  j["n"] = s.size();
  j["coefficients"] = io::to_json(error_coefficients(s));
  if (s.has_gradient()) {
    j["coefficients_tv_only"] = io::to_json(error_coefficients(s, GradientInclusion::exclude));
    j["gradient_total"] = scalar_json(s.gradient_total());
  }
  j["delta_g"] = scalar_json(delta_g(s));
  j["delta_g_prime"] = scalar_json(delta_g_prime(s));
  j["g"] = scalar_json(g_sum(s));
  j["g_identity_residual"] = scalar_json(g_identity_residual(s.t()));
  j["g_prime"] = scalar_json(g_sum_prime(s));
  j["g_prime_identity_residual"] = scalar_json(g_identity_residual(s.v()));
  j["normalized"] = is_normalized(s);
  j["symmetric"] = is_symmetric(s);
  j["forward"] = is_forward(s);
  j["correctability_residual"] =
      scalar_json(correctability_residual(error_coefficients(s, GradientInclusion::exclude)));

  const Part part = s.kind() == Kind::velocity ? Part::A : Part::B;
  try {
    j["theorem"] = report_json(part == Part::A ? bound_part_a(s) : bound_part_b(s));
  } catch (const Error& e) {
    Json t;
    t["part"] = std::string(to_string(part));
    t["applicable"] = false;
    t["reason"] = e.what();
    j["theorem"] = std::move(t);
  }
  try {
    j["corollary"] = corollary_json(corollary_gap(s, part));
  } catch (const Error&) {
    j["corollary"] = nullptr;
  }
  return j;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    }
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

void print_table(std::ostream& out, const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& [k, _] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
}

template <class S>
void print_scheme_table(std::ostream& out, const BasicScheme<S>& s) {
  out << "# " << (s.label().empty() ? "scheme" : s.label()) << " (" << to_string(s.kind()) << ")\n";
  out << std::left << std::setw(4) << "i" << std::setw(26) << "t" << std::setw(26) << "v"
      << "gradient\n";
  auto str = [](const S& x) {
    if constexpr (std::is_same_v<S, double>) {
      return format_double(x);
    } else {
      return to_string(x);
    }
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << std::setw(4) << i << std::setw(26) << str(s.t()[i]) << std::setw(26) << str(s.v()[i]);
    out << (is_zero(s.gradient_at(i)) ? std::string("-") : str(s.gradient_at(i))) << "\n";
  }
  const auto ec = error_coefficients(s);
  out << "e_T=" << str(ec.e_T) << " e_V=" << str(ec.e_V) << " e_TV=" << str(ec.e_TV)
      << " e_TTV=" << str(ec.e_TTV) << " e_VTV=" << str(ec.e_VTV) << "\n";
}

// ---------------------------------------------------------------- verify

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

template <class S>
std::string str_of(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return format_double(x);
  } else {
    return to_string(x);
  }
}

std::vector<Check> verify_exact(const RationalScheme& s, int order) {
  std::vector<Check> checks;
  const auto formula = error_coefficients(s);
  const auto oracle = bch::expand_scheme(s).coefficients();
  const auto separate = bch::expand_scheme(s, bch::GradientFactors::separate).coefficients();
  auto diff = [](const ErrorCoefficients<Rational>& a, const ErrorCoefficients<Rational>& b) {
    std::string d;
    auto one = [&](const char* n, const Rational& x, const Rational& y) {
      if (x != y) d += std::string(n) + ": " + to_string(x) + " vs " + to_string(y) + "; ";
    };
    one("e_T", a.e_T, b.e_T);
    one("e_V", a.e_V, b.e_V);
    one("e_TV", a.e_TV, b.e_TV);
    one("e_TTV", a.e_TTV, b.e_TTV);
    one("e_VTV", a.e_VTV, b.e_VTV);
    return d;
  };
  const std::string d = diff(formula, oracle);
  checks.push_back({"formula_vs_oracle", d.empty(), d.empty() ? "exact" : d});
  const std::string d2 = diff(oracle, separate);
  checks.push_back({"gradient_merge_vs_separate", d2.empty(), d2.empty() ? "exact" : d2});
  const Rational gt = g_identity_residual(s.t());
  const Rational gv = g_identity_residual(s.v());
  checks.push_back({"g_identity", gt == 0 && gv == 0,
                    "residual t: " + to_string(gt) + ", v: " + to_string(gv)});
  std::string nd;
  if (formula.e_T != 1) nd += "e_T = " + to_string(formula.e_T) + " (expected 1); ";
  if (formula.e_V != 1) nd += "e_V = " + to_string(formula.e_V) + " (expected 1); ";
  checks.push_back({"normalization", nd.empty(), nd.empty() ? "e_T = e_V = 1" : nd});
  if (order >= 3) {
    checks.push_back({"order3", formula.e_TV == 0, "e_TV = " + to_string(formula.e_TV)});
  }
  if (order >= 4) {
    const bool ok = formula.e_TTV == 0 && formula.e_VTV == 0;
    checks.push_back({"order4", ok,
                      "e_TTV = " + to_string(formula.e_TTV) + ", e_VTV = " + to_string(formula.e_VTV)});
  }
  const Part part = s.kind() == Kind::velocity ? Part::A : Part::B;
  if (is_admissible(s, part)) {
    const auto r = part == Part::A ? bound_part_a(s) : bound_part_b(s);
    checks.push_back({std::string("theorem_part_") + std::string(to_string(part)), r.satisfied,
                      "gap = " + to_string(r.gap)});
  }
  return checks;
}

std::vector<Check> verify_float(const Scheme& s, double tol, int order) {
  std::vector<Check> checks;
  const auto formula = error_coefficients(s);
  const auto oracle_exact = bch::expand_scheme(s, ExactConversion::binary);
  const auto oracle = oracle_exact.coefficients();
  const auto separate =
      bch::expand_scheme(s, ExactConversion::binary, bch::GradientFactors::separate).coefficients();
  auto close = [&](double x, const Rational& y) {
    const double yd = to_double(y);
    return std::abs(x - yd) <= tol * std::max(1.0, std::abs(yd));
  };
  std::string d;
  auto one = [&](const char* n, double x, const Rational& y) {
    if (!close(x, y)) d += std::string(n) + ": " + format_double(x) + " vs " + format_double(to_double(y)) + "; ";
  };
  one("e_T", formula.e_T, oracle.e_T);
  one("e_V", formula.e_V, oracle.e_V);
  one("e_TV", formula.e_TV, oracle.e_TV);
  one("e_TTV", formula.e_TTV, oracle.e_TTV);
  one("e_VTV", formula.e_VTV, oracle.e_VTV);
  checks.push_back({"formula_vs_oracle", d.empty(), d.empty() ? "within " + format_double(tol) : d});
  checks.push_back({"gradient_merge_vs_separate", oracle == separate, oracle == separate ? "exact" : "differ"});
  const double gt = g_identity_residual(s.t());
  const double gv = g_identity_residual(s.v());
  checks.push_back({"g_identity", std::abs(gt) <= tol && std::abs(gv) <= tol,
                    "residual t: " + format_double(gt) + ", v: " + format_double(gv)});
  std::string nd;
  if (std::abs(formula.e_T - 1.0) > tol) nd += "e_T = " + format_double(formula.e_T) + " (expected 1); ";
  if (std::abs(formula.e_V - 1.0) > tol) nd += "e_V = " + format_double(formula.e_V) + " (expected 1); ";
  checks.push_back({"normalization", nd.empty(), nd.empty() ? "e_T = e_V = 1" : nd});
  if (order >= 3) {
    checks.push_back({"order3", std::abs(formula.e_TV) <= tol, "e_TV = " + format_double(formula.e_TV)});
  }
  if (order >= 4) {
    const bool ok = std::abs(formula.e_TTV) <= tol && std::abs(formula.e_VTV) <= tol;
    checks.push_back({"order4", ok,
                      "e_TTV = " + format_double(formula.e_TTV) + ", e_VTV = " + format_double(formula.e_VTV)});
  }
  const Part part = s.kind() == Kind::velocity ? Part::A : Part::B;
  if (is_admissible(s, part)) {
    const auto r = part == Part::A ? bound_part_a(s) : bound_part_b(s);
    checks.push_back({std::string("theorem_part_") + std::string(to_string(part)), r.satisfied,
                      "gap = " + format_double(r.gap)});
  }
  return checks;
}

// ---------------------------------------------------------------- options

struct Options {
  std::string mode_name;
  unsigned seed = kDefaultSeed;
  std::string format = "json";
  std::string verify_format = "text";
  std::string converge_format = "table";

  std::string scheme_file;

  // synth
  std::string family;
  double alpha = 0.0;
  int n = 6;
  std::string ratios;
  std::string t_list;
  std::string v_list;
  std::string placement = "central";
  bool prune = false;
  bool allow_asymmetric = false;
  std::string out_file;

  // verify
  bool use_float = false;
  double tol = 1e-12;
  int order = 0;

  // converge
  std::string system;
  double h0 = 0.1;
  std::size_t levels = 5;
  double t_final = 2.0 * std::numbers::pi;

  // sweep
  std::string param = "alpha";
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;
  std::string out_dir;
  bool sweep_converge = false;

  // sample
  std::string part = "A";
  std::size_t count = 10000;
  std::size_t max_n = 8;
};

NumericMode mode_of(const Options& o) {
  return o.mode_name.empty() ? default_mode() : io::parse_mode(o.mode_name);
}

synth::Placement placement_of(const std::string& name) {
  if (name == "central") return synth::Placement::central;
  if (name == "split") return synth::Placement::split;
  throw Error(ErrorCode::usage_error, "placement must be central or split");
}

void emit(const Options& o, std::ostream& out, const std::string& content) {
  if (o.out_file.empty()) {
    out << content;
  } else {
    io::write_file_atomic(o.out_file, content);
  }
}

// ---------------------------------------------------------------- commands

int cmd_analyze(const Options& o, std::ostream& out) {
  const NumericMode mode = mode_of(o);
  Json j = mode == NumericMode::rational ? analyze_json(io::read_scheme_exact(o.scheme_file), mode)
                                         : analyze_json(io::read_scheme(o.scheme_file), mode);
  if (o.format == "table") {
    std::ostringstream ss;
    print_table(ss, j);
    emit(o, out, ss.str());
  } else if (o.format == "json") {
    emit(o, out, io::dump(j));
  } else {
    throw Error(ErrorCode::usage_error, "analyze supports --format json|table");
  }
  return kExitOk;
}

synth::SynthesisRequest request_of(const Options& o, std::vector<std::string>& coeff_text) {
  synth::SynthesisRequest r;
  r.family = synth::parse_family(o.family);
  r.n = o.n;
  r.params["alpha"] = o.alpha;
  if (!o.ratios.empty()) r.ratios = parse_double_list(o.ratios);
  const std::string& list = r.family == synth::Family::gradient_position ? o.v_list : o.t_list;
  if (r.family == synth::Family::gradient_position && !o.t_list.empty()) {
    throw Error(ErrorCode::usage_error, "gradient-position takes --v, not --t");
  }
  if (r.family != synth::Family::gradient_position && !o.v_list.empty()) {
    throw Error(ErrorCode::usage_error, std::string(synth::to_string(r.family)) + " takes --t, not --v");
  }
  if (!list.empty()) {
    r.coefficients = parse_double_list(list);
    coeff_text = split_list(list);
  }
  r.placement = placement_of(o.placement);
  r.symmetry = o.allow_asymmetric ? synth::SymmetryCheck::warn : synth::SymmetryCheck::strict;
  r.prune = o.prune;
  return r;
}

int cmd_synth(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<std::string> coeff_text;
  const auto request = request_of(o, coeff_text);
  synth::Diagnostics diag;
  const bool exact_family = request.family == synth::Family::gradient_velocity ||
                            request.family == synth::Family::stationary_velocity;
  std::string doc;
  std::ostringstream table;
  if (mode_of(o) == NumericMode::rational && exact_family && !coeff_text.empty()) {
    std::vector<Rational> coeffs;
    for (const auto& s : coeff_text) coeffs.push_back(parse_rational(s));
    const auto scheme = synth::synthesize_exact(request, coeffs, &diag);
    doc = io::dump(io::to_json(scheme));
    print_scheme_table(table, scheme);
  } else {
    const auto scheme = synth::synthesize(request, &diag);
    doc = io::dump(io::to_json(scheme));
    print_scheme_table(table, scheme);
  }
  for (const auto& w : diag.warnings) err << "warning: " << w << "\n";
  if (o.out_file.empty()) {
    out << doc;
  } else {
    io::write_file_atomic(o.out_file, doc);
    out << table.str();
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const bool floating = o.use_float || mode_of(o) == NumericMode::floating;
  const auto checks = floating ? verify_float(io::read_scheme(o.scheme_file), o.tol, o.order)
                               : verify_exact(io::read_scheme_exact(o.scheme_file), o.order);
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  if (o.verify_format == "json") {
    Json j;
    j["mode"] = floating ? "float" : "rational";
    j["pass"] = all;
    Json arr = Json::array();
    for (const auto& c : checks) arr.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = std::move(arr);
    out << io::dump(j);
  } else {
    for (const auto& c : checks) out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    out << (all ? "PASS" : "FAIL") << "\n";
  }
  return all ? kExitOk : kExitFailed;
}

struct StudySetup {
  dynamics::HamiltonianSystem system;
  std::vector<double> steps;
};

StudySetup study_setup(const Options& o) {
  if (o.system.empty()) throw Error(ErrorCode::usage_error, "--system is required");
  StudySetup setup{dynamics::system_by_name(o.system), {}};
  if (!(o.h0 > 0.0) || !(o.t_final > 0.0) || o.levels < 2) {
    throw Error(ErrorCode::usage_error, "need h0 > 0, t-final > 0 and levels >= 2");
  }
  // Snap h0 so every level divides t_final.
  const double n0 = std::max(1.0, std::round(o.t_final / o.h0));
  setup.steps = dynamics::halving_steps(o.t_final / n0, o.levels);
  return setup;
}

int cmd_converge(const Options& o, std::ostream& out, std::ostream& err) {
  const Scheme scheme = io::read_scheme(o.scheme_file);
  const auto setup = study_setup(o);
  const auto report = dynamics::convergence_study(scheme, setup.system, setup.system.initial_state,
                                                  o.t_final, setup.steps);
  const std::string slope = std::isfinite(report.slope) ? format_double(report.slope) : "nan";
  if (o.converge_format == "csv") {
    emit(o, out, dynamics::to_csv(report));
    (o.out_file.empty() ? err : out) << "slope " << slope << "\n";
  } else if (o.converge_format == "json") {
    Json j = dynamics::to_json(report);
    j["scheme"] = scheme.label();
    j["system"] = setup.system.label;
    j["t_final"] = o.t_final;
    emit(o, out, io::dump(j));
  } else if (o.converge_format == "table") {
    std::ostringstream ss;
    ss << std::left << std::setw(24) << "h" << std::setw(24) << "error" << "energy_drift\n";
    for (std::size_t k = 0; k < report.step_sizes.size(); ++k) {
      ss << std::setw(24) << format_double(report.step_sizes[k]) << std::setw(24)
         << format_double(report.errors[k]) << format_double(report.energy_drifts[k]) << "\n";
    }
    ss << "slope " << slope << " (levels " << report.fit_begin << ".." << report.fit_end << ", reference "
       << report.reference << ")\n";
    emit(o, out, ss.str());
  } else {
    throw Error(ErrorCode::usage_error, "converge supports --format csv|json|table");
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (synth::parse_family(o.family) != synth::Family::zero_dg_velocity || o.param != "alpha") {
    throw Error(ErrorCode::usage_error, "sweep supports --family zero-dg --param alpha");
  }
  if (!(o.step > 0.0) || o.to < o.from) throw Error(ErrorCode::usage_error, "empty parameter range");
  if (o.out_dir.empty()) throw Error(ErrorCode::usage_error, "--out-dir is required");
  const auto count = static_cast<std::size_t>(std::floor((o.to - o.from) / o.step + 1e-9)) + 1;
  std::filesystem::create_directories(o.out_dir);
  std::optional<StudySetup> setup;
  if (o.sweep_converge) {
    Options with_system = o;
    if (with_system.system.empty()) with_system.system = "harmonic";
    setup = study_setup(with_system);
  }

  std::string csv = "alpha,status,t3,t4,delta_g,e_TV,e_TTV,e_VTV,forward";
  if (setup) csv += ",slope";
  csv += "\n";
  std::size_t written = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double alpha = o.from + static_cast<double>(k) * o.step;
    csv += format_double(alpha);
    try {
      const auto t = synth::zero_dg_symmetric_drifts(6, alpha);
      std::ostringstream label;
      label << "zero-dg(n=6,alpha=" << format_double(alpha) << ")";
      const Scheme s = synth::zero_dg_velocity(t).with_label(label.str());
      const auto ec = error_coefficients(s);
      std::ostringstream name;
      name << "alpha_" << std::setw(3) << std::setfill('0') << k << ".json";
      io::write_file_atomic(std::filesystem::path(o.out_dir) / name.str(), io::dump(io::to_json(s)));
      ++written;
      csv += ",ok," + format_double(t[2]) + "," + format_double(t[3]) + "," + format_double(delta_g(s)) +
             "," + format_double(ec.e_TV) + "," + format_double(ec.e_TTV) + "," + format_double(ec.e_VTV) +
             "," + (is_forward(s) ? "true" : "false");
      if (setup) {
        const auto rep = dynamics::convergence_study(s, setup->system, setup->system.initial_state,
                                                     o.t_final, setup->steps);
        csv += "," + format_double(rep.slope);
      }
    } catch (const Error& e) {
      csv += std::string(",") + std::string(to_string(e.code())) + ",,,,,,,";
      if (setup) csv += ",";
    }
    csv += "\n";
  }
  io::write_file_atomic(std::filesystem::path(o.out_dir) / "summary.csv", csv);
  out << "wrote " << written << " schemes and summary.csv to " << o.out_dir << "\n";
  return kExitOk;
}

// Dirichlet(1,...,1) via normalized exponentials.
std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n) {
  std::exponential_distribution<double> ex(1.0);
  std::vector<double> x(n);
  double total = 0.0;
  for (auto& xi : x) total += (xi = ex(rng));
  for (auto& xi : x) xi /= total;
  return x;
}

std::vector<double> free_normalized(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) total += (x[i] = u(rng));
  x[n - 1] = 1.0 - total;
  return x;
}

int cmd_sample(const Options& o, std::ostream& out) {
  if (o.part != "A" && o.part != "B") throw Error(ErrorCode::usage_error, "--part must be A or B");
  if (o.max_n < 3) throw Error(ErrorCode::usage_error, "--max-n must be at least 3");
  std::mt19937_64 rng(o.seed);
  std::uniform_int_distribution<std::size_t> size(3, o.max_n);
  std::size_t violations = 0, wrong_sign = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < o.count; ++k) {
    const std::size_t n = size(rng);
    std::vector<double> positive(1, 0.0);
    for (double x : dirichlet(rng, n - 1)) positive.push_back(x);
    const auto free = free_normalized(rng, n);
    const bool a = o.part == "A";
    const Scheme s(a ? Kind::velocity : Kind::position, a ? positive : free, a ? free : positive);
    const auto r = a ? bound_part_a(s) : bound_part_b(s);
    if (!r.satisfied) ++violations;
    if (!(a ? r.fundamental_lhs < 0 : r.fundamental_lhs > 0)) ++wrong_sign;
    worst = std::min(worst, r.gap);
  }
  Json j;
  j["part"] = o.part;
  j["samples"] = o.count;
  j["seed"] = o.seed;
  j["violations"] = violations;
  j["residual_sign_failures"] = wrong_sign;
  j["min_gap"] = worst;
  out << io::dump(j);
  return violations == 0 && wrong_sign == 0 ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"splitlab: analysis and synthesis of T/V splitting schemes", "splitlab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--mode", o.mode_name, "numeric mode: rational|float (default $SPLITLAB_MODE or rational)");
  app.add_option("--seed", o.seed, "seed for sampling")->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "error coefficients, theorem bounds and corollaries");
  analyze->add_option("scheme", o.scheme_file, "scheme JSON file")->required()->check(CLI::ExistingFile);
  analyze->add_option("--format", o.format, "json|table")->capture_default_str();
  analyze->add_option("--out", o.out_file, "write the report here");

  auto* synth_cmd = app.add_subcommand("synth", "construct a fourth-order scheme");
  synth_cmd->add_option("--family", o.family,
                        "zero-dg | gradient-velocity | gradient-position | forest-ruth | stationary-velocity")
      ->required();
  synth_cmd->add_option("--alpha", o.alpha, "alpha for the n = 6 zero-dg family")->capture_default_str();
  synth_cmd->add_option("--n", o.n, "number of factor pairs for zero-dg")->capture_default_str();
  synth_cmd->add_option("--ratios", o.ratios, "outer drift ratios for general-n zero-dg, comma separated");
  synth_cmd->add_option("--t", o.t_list, "drift vector, comma separated (p/q allowed)");
  synth_cmd->add_option("--v", o.v_list, "kick vector for gradient-position");
  synth_cmd->add_option("--placement", o.placement, "central|split")->capture_default_str();
  synth_cmd->add_flag("--prune", o.prune, "drop zero-coefficient factors");
  synth_cmd->add_flag("--allow-asymmetric", o.allow_asymmetric, "warn instead of failing on asymmetric input");
  synth_cmd->add_option("--out", o.out_file, "scheme file to write");

  auto* verify = app.add_subcommand("verify", "cross-check formulas against the exact BCH oracle");
  verify->add_option("scheme", o.scheme_file, "scheme JSON file")->required()->check(CLI::ExistingFile);
  verify->add_flag("--float", o.use_float, "toleranced comparison of the float coefficients");
  verify->add_option("--tol", o.tol, "tolerance in float mode")->capture_default_str();
  verify->add_option("--order", o.order, "also require order 3 (e_TV = 0) or 4 (all third-order terms 0)");
  verify->add_option("--format", o.verify_format, "json|text")->capture_default_str();

  auto* converge = app.add_subcommand(
      "converge", "convergence study; csv columns: h,error,energy_drift");
  converge->add_option("scheme", o.scheme_file, "scheme JSON file")->required()->check(CLI::ExistingFile);
  converge->add_option("--system", o.system, "harmonic | pendulum | kepler")->required();
  converge->add_option("--h0", o.h0, "largest step (snapped to divide t-final)")->capture_default_str();
  converge->add_option("--levels", o.levels, "number of halvings")->capture_default_str();
  converge->add_option("--t-final", o.t_final, "integration time")->capture_default_str();
  converge->add_option("--format", o.converge_format, "csv|json|table")->capture_default_str();
  converge->add_option("--out", o.out_file, "output file");

  auto* sweep = app.add_subcommand(
      "sweep", "zero-dg alpha sweep; summary.csv columns: alpha,status,t3,t4,delta_g,e_TV,e_TTV,e_VTV,forward[,slope]");
  sweep->add_option("--family", o.family, "zero-dg")->required();
  sweep->add_option("--param", o.param, "alpha")->capture_default_str();
  sweep->add_option("--from", o.from, "first value")->required();
  sweep->add_option("--to", o.to, "last value (inclusive)")->required();
  sweep->add_option("--step", o.step, "grid spacing")->required();
  sweep->add_option("--out-dir", o.out_dir, "output directory")->required();
  sweep->add_flag("--converge", o.sweep_converge, "add a convergence slope column");
  sweep->add_option("--system", o.system, "system for --converge (default harmonic)");
  sweep->add_option("--h0", o.h0, "largest step for --converge")->capture_default_str();
  sweep->add_option("--levels", o.levels, "levels for --converge")->capture_default_str();
  sweep->add_option("--t-final", o.t_final, "integration time for --converge")->capture_default_str();

  auto* sample = app.add_subcommand("sample", "random admissible schemes against the theorem bound");
  sample->add_option("--part", o.part, "A|B")->capture_default_str();
  sample->add_option("--count", o.count, "number of samples")->capture_default_str();
  sample->add_option("--max-n", o.max_n, "largest number of factor pairs")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (synth_cmd->parsed()) return cmd_synth(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out);
    if (converge->parsed()) return cmd_converge(o, out, err);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (sample->parsed()) return cmd_sample(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace splitlab::cli
