// Copyright 2026 The fista-lab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FISTA_LAB_EXPERIMENT_HPP
#define FISTA_LAB_EXPERIMENT_HPP

// Experiment configs and the entry points behind the command line tool.
// Config files are JSON; see README.md for the schema. Unknown keys, bad
// types and out-of-range values raise ConfigError.

#include "fista_lab/bcch.hpp"
#include "fista_lab/checks.hpp"
#include "fista_lab/diagnostics.hpp"
#include "fista_lab/io.hpp"
#include "fista_lab/problems.hpp"
#include "fista_lab/schedule.hpp"
#include "fista_lab/solver.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace fista_lab {

class ConfigError : public Error {
 public:
  using Error::Error;
};

inline const std::vector<std::string>& analysis_names() {
  static const std::vector<std::string> names = {
      "lipschitz", "rate_bound",   "lyapunov",        "structural",
      "bounded",   "vanishing_gap", "sufficient_decrease", "claim2",
      "salzo",     "xi_difference", "span_projection", "limit"};
  return names;
}

struct ExperimentConfig {
  nlohmann::json problem;  // {"family": ..., params}
  std::string method = "fista";
  Vector x0;
  std::variant<std::string, std::vector<double>> schedule = std::string("bt");
  std::size_t iterations = 0;
  std::vector<Vector> s_refs;
  std::size_t snapshot_every = 1;
  std::vector<std::string> analyses;
  std::string output_dir;
  std::uint64_t seed = 0;

  std::size_t verdict_window = 100;
  double verdict_tol = 1e-6;
  double xi_rel_tol = 1e-6;

  std::size_t probe_count = 100;
  std::size_t probe_rows = 100;
  double probe_radius = 10.0;

  std::optional<Vector> expected_point;
  double expected_tol = 1e-3;

  std::vector<Vector> span_generators;
  std::vector<Vector> directions;
};

namespace detail {

inline void reject_unknown(const nlohmann::json& obj,
                           const std::set<std::string>& allowed,
                           const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

inline Vector parse_vector(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) {
    throw ConfigError(where + ": expected a nonempty array of numbers");
  }
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(where + ": non-numeric entry");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  if (!all_finite(v)) throw ConfigError(where + ": non-finite entry");
  return v;
}

inline std::vector<Vector> parse_vectors(const nlohmann::json& j,
                                         const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_vector(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline std::size_t parse_count(const nlohmann::json& j, const std::string& where,
                               std::size_t min_value) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < static_cast<std::int64_t>(min_value)) {
    throw ConfigError(where + ": must be at least " + std::to_string(min_value));
  }
  return static_cast<std::size_t>(v);
}

inline double parse_positive(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(where + ": must be positive and finite");
  }
  return v;
}

}  // namespace detail

/// Builds the problem named by a config's "problem" object.
inline ProblemInstance make_problem(const nlohmann::json& spec,
                                    std::uint64_t default_seed = 0) {
  using detail::parse_count;
  using detail::parse_positive;
  using detail::parse_vector;
  if (!spec.is_object() || !spec.contains("family") ||
      !spec["family"].is_string()) {
    throw ConfigError("problem: needs a string 'family'");
  }
  const std::string family = spec["family"].get<std::string>();
  auto seed_of = [&]() -> std::uint64_t {
    return spec.contains("seed")
               ? static_cast<std::uint64_t>(parse_count(spec["seed"], "problem.seed", 0))
               : default_seed;
  };
  if (family == "feasibility") {
    detail::reject_unknown(spec, {"family"}, "problem");
    return feasibility_problem();
  }
  if (family == "quadratic") {
    detail::reject_unknown(spec, {"family", "diag", "center"}, "problem");
    if (!spec.contains("diag")) throw ConfigError("problem: quadratic needs 'diag'");
    const Vector diag = parse_vector(spec["diag"], "problem.diag");
    const Vector center = spec.contains("center")
                              ? parse_vector(spec["center"], "problem.center")
                              : Vector::Zero(diag.size());
    if (center.size() != diag.size()) {
      throw ConfigError("problem: 'center' and 'diag' lengths differ");
    }
    try {
      return quadratic_problem(diag.asDiagonal().toDenseMatrix(), center);
    } catch (const Error& e) {
      throw ConfigError(std::string("problem: ") + e.what());
    }
  }
  if (family == "random-quadratic") {
    detail::reject_unknown(spec, {"family", "dim", "seed", "cond"}, "problem");
    const std::size_t dim =
        spec.contains("dim") ? parse_count(spec["dim"], "problem.dim", 1) : 5;
    const double cond =
        spec.contains("cond") ? parse_positive(spec["cond"], "problem.cond") : 100.0;
    if (cond < 1.0) throw ConfigError("problem.cond: must be at least 1");
    return random_quadratic(dim, seed_of(), cond);
  }
  if (family == "lasso") {
    detail::reject_unknown(spec, {"family", "rows", "cols", "lambda", "seed"},
                           "problem");
    const std::size_t rows =
        spec.contains("rows") ? parse_count(spec["rows"], "problem.rows", 1) : 20;
    const std::size_t cols =
        spec.contains("cols") ? parse_count(spec["cols"], "problem.cols", 1) : 10;
    const double lambda =
        spec.contains("lambda") ? parse_positive(spec["lambda"], "problem.lambda") : 0.1;
    return random_lasso(rows, cols, lambda, seed_of());
  }
  throw ConfigError("problem: unknown family '" + family + "'");
}

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  using namespace detail;
  reject_unknown(j,
                 {"problem", "method", "x0", "schedule", "iterations", "s_refs",
                  "snapshot_every", "analyses", "output_dir", "seed", "verdict",
                  "probes", "expected_limit", "span_generators", "directions"},
                 "config");
  ExperimentConfig c;
  for (const char* key : {"problem", "x0", "iterations"}) {
    if (!j.contains(key)) {
      throw ConfigError(std::string("config: missing required key '") + key + "'");
    }
  }
  c.problem = j["problem"];
  c.x0 = parse_vector(j["x0"], "x0");
  c.iterations = parse_count(j["iterations"], "iterations", 1);

  if (j.contains("method")) {
    if (!j["method"].is_string()) throw ConfigError("method: expected a string");
    c.method = j["method"].get<std::string>();
    if (c.method != "fista" && c.method != "pgm" && c.method != "nesterov") {
      throw ConfigError("method: must be fista, pgm or nesterov");
    }
  }
  if (j.contains("schedule")) {
    const auto& s = j["schedule"];
    if (s.is_string()) {
      const auto name = s.get<std::string>();
      if (name != "bt" && name != "linear") {
        throw ConfigError("schedule: must be \"bt\", \"linear\" or an array");
      }
      c.schedule = name;
    } else if (s.is_array()) {
      const Vector v = parse_vector(s, "schedule");
      c.schedule = std::vector<double>(v.data(), v.data() + v.size());
    } else {
      throw ConfigError("schedule: must be \"bt\", \"linear\" or an array");
    }
  }
  if (j.contains("s_refs")) c.s_refs = parse_vectors(j["s_refs"], "s_refs");
  if (j.contains("snapshot_every")) {
    c.snapshot_every = parse_count(j["snapshot_every"], "snapshot_every", 1);
  }
  if (j.contains("analyses")) {
    if (!j["analyses"].is_array()) throw ConfigError("analyses: expected an array");
    for (const auto& a : j["analyses"]) {
      if (!a.is_string()) throw ConfigError("analyses: expected strings");
      const auto name = a.get<std::string>();
      const auto& known = analysis_names();
      if (std::find(known.begin(), known.end(), name) == known.end()) {
        throw ConfigError("analyses: unknown analysis '" + name + "'");
      }
      c.analyses.push_back(name);
    }
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("output_dir: expected a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("seed")) c.seed = parse_count(j["seed"], "seed", 0);
  if (j.contains("verdict")) {
    const auto& v = j["verdict"];
    reject_unknown(v, {"window", "tol", "xi_rel_tol"}, "verdict");
    if (v.contains("window")) c.verdict_window = parse_count(v["window"], "verdict.window", 2);
    if (v.contains("tol")) c.verdict_tol = parse_positive(v["tol"], "verdict.tol");
    if (v.contains("xi_rel_tol")) {
      c.xi_rel_tol = parse_positive(v["xi_rel_tol"], "verdict.xi_rel_tol");
    }
  }
  if (j.contains("probes")) {
    const auto& p = j["probes"];
    reject_unknown(p, {"count", "rows", "radius"}, "probes");
    if (p.contains("count")) c.probe_count = parse_count(p["count"], "probes.count", 1);
    if (p.contains("rows")) c.probe_rows = parse_count(p["rows"], "probes.rows", 1);
    if (p.contains("radius")) c.probe_radius = parse_positive(p["radius"], "probes.radius");
  }
  if (j.contains("expected_limit")) {
    const auto& e = j["expected_limit"];
    reject_unknown(e, {"point", "tol"}, "expected_limit");
    if (!e.contains("point")) throw ConfigError("expected_limit: needs 'point'");
    c.expected_point = parse_vector(e["point"], "expected_limit.point");
    if (e.contains("tol")) c.expected_tol = parse_positive(e["tol"], "expected_limit.tol");
  }
  if (j.contains("span_generators")) {
    c.span_generators = parse_vectors(j["span_generators"], "span_generators");
  }
  if (j.contains("directions")) {
    c.directions = parse_vectors(j["directions"], "directions");
  }

  const auto dim = c.x0.size();
  auto same_dim = [dim](const std::vector<Vector>& vs, const char* what) {
    for (const Vector& v : vs) {
      if (v.size() != dim) {
        throw ConfigError(std::string(what) + ": dimension differs from x0");
      }
    }
  };
  same_dim(c.s_refs, "s_refs");
  same_dim(c.span_generators, "span_generators");
  same_dim(c.directions, "directions");
  if (c.expected_point && c.expected_point->size() != dim) {
    throw ConfigError("expected_limit.point: dimension differs from x0");
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  ExperimentConfig c = parse_config(j);
  if (c.output_dir.empty()) {
    c.output_dir = "out/" + std::filesystem::path(path).stem().string();
  }
  return c;
}

inline Schedule make_schedule(const ExperimentConfig& c) {
  if (const auto* name = std::get_if<std::string>(&c.schedule)) {
    return *name == "linear" ? Schedule::linear() : Schedule::beck_teboulle();
  }
  return Schedule::explicit_values(std::get<std::vector<double>>(c.schedule));
}

struct ExperimentResult {
  Trace trace;
  std::vector<CheckResult> checks;
  bool pass() const {
    return !trace.aborted() &&
           std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
  }
  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    if (trace.aborted()) out.push_back("non_finite_iterate");
    for (const auto& c : checks)
      if (!c.pass) out.push_back(c.claim);
    return out;
  }
};

namespace detail {

inline CheckResult verdict_check(const std::string& claim,
                                 const ConvergenceVerdict& v) {
  CheckResult r;
  r.claim = claim;
  r.pass = v.converged;
  r.value = v.tail_oscillation;
  r.tol = v.tol;
  r.window = v.window;
  r.note = "limit estimate " + format_real(v.limit_estimate);
  return r;
}

inline std::vector<std::string> default_analyses(const ExperimentConfig& c,
                                                 const CompositeProblem& p) {
  std::vector<std::string> a = {"lipschitz", "sufficient_decrease"};
  if (c.method != "pgm") {
    a.insert(a.end(), {"structural", "bounded", "vanishing_gap", "claim2"});
  }
  if (p.solution) {
    a.push_back("rate_bound");
    if (c.method != "pgm" && !c.s_refs.empty()) {
      a.push_back("lyapunov");
      if (c.s_refs.size() >= 2) a.insert(a.end(), {"salzo", "xi_difference"});
    }
  }
  if (!c.span_generators.empty()) a.push_back("span_projection");
  if (c.expected_point) a.push_back("limit");
  return a;
}

}  // namespace detail

/// Runs one experiment in memory. ConfigError for inconsistent configs,
/// Error for failures inside the library.
inline ExperimentResult run_experiment(const ExperimentConfig& c) {
  const ProblemInstance inst = make_problem(c.problem, c.seed);
  const CompositeProblem& problem = inst.problem;
  if (static_cast<std::size_t>(c.x0.size()) != problem.dim) {
    throw ConfigError("x0: dimension " + std::to_string(c.x0.size()) +
                      " does not match problem dimension " +
                      std::to_string(problem.dim));
  }

  RunOptions opts;
  opts.s_refs = c.s_refs;
  opts.keep_vectors_every = 1;  // analyses need every row; snapshots thin later

  ExperimentResult result;
  if (c.method == "pgm") {
    result.trace = pgm_run(problem, c.x0, c.iterations, opts);
  } else {
    Schedule schedule = make_schedule(c);
    try {
      result.trace = c.method == "nesterov"
                         ? nesterov_run(problem, c.x0, schedule, c.iterations, opts)
                         : fista_run(problem, c.x0, schedule, c.iterations, opts);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  const Trace& trace = result.trace;

  const std::vector<std::string> analyses =
      c.analyses.empty() ? detail::default_analyses(c, problem) : c.analyses;
  const std::size_t rows = trace.records.size();
  std::mt19937_64 rng(c.seed);

  for (const std::string& name : analyses) {
    if (name == "lipschitz") {
      std::vector<Vector> pts = domain_probes(
          ProblemInstance{problem, {}}, 2 * c.probe_count, c.probe_radius, c.seed + 1);
      std::vector<std::pair<Vector, Vector>> pairs;
      for (std::size_t i = 0; i + 1 < pts.size(); i += 2) pairs.emplace_back(pts[i], pts[i + 1]);
      const LipschitzReport lr = check_lipschitz(problem, pairs);
      CheckResult r;
      r.claim = "lipschitz";
      r.pass = lr.pass;
      r.value = lr.max_ratio;
      r.tol = problem.beta() * (1.0 + 1e-8);
      result.checks.push_back(r);
    } else if (name == "rate_bound") {
      result.checks.push_back(check_rate_bound(trace, problem));
    } else if (name == "lyapunov") {
      for (auto& r : check_lyapunov(trace)) result.checks.push_back(r);
    } else if (name == "structural") {
      result.checks.push_back(check_structural(trace));
    } else if (name == "bounded") {
      result.checks.push_back(check_bounded_iterates(trace));
    } else if (name == "vanishing_gap") {
      result.checks.push_back(check_vanishing_gap(trace));
    } else if (name == "sufficient_decrease") {
      const auto probes = domain_probes(inst, c.probe_count, c.probe_radius, c.seed);
      const auto picked = spread_rows(rows - 1, c.probe_rows);
      result.checks.push_back(check_sufficient_decrease(problem, trace, probes, picked));
    } else if (name == "claim2") {
      std::vector<Vector> dirs = c.directions;
      if (dirs.empty()) {
        for (const auto& [a, b] : all_pairs(c.s_refs)) dirs.push_back(a - b);
        for (std::size_t i = 0; i < problem.dim; ++i) {
          dirs.push_back(Vector::Unit(static_cast<Eigen::Index>(problem.dim),
                                      static_cast<Eigen::Index>(i)));
        }
      }
      CheckResult r;
      r.claim = "claim2_identity";
      r.pass = true;
      for (const Vector& d : dirs) {
        const double res = check_claim2_identity(trace, d);
        const double tol = claim2_tolerance(trace, d);
        r.value = std::max(r.value, res / tol * 1e-9);
        if (res > tol) r.pass = false;
      }
      r.tol = 1e-9;
      r.note = "scaled by max(1, |d| sup|x_k|); " + std::to_string(dirs.size()) +
               " directions";
      result.checks.push_back(r);
    } else if (name == "salzo") {
      const SalzoReport sr = salzo_check(trace, all_pairs(c.s_refs),
                                         c.verdict_window, c.verdict_tol);
      for (std::size_t i = 0; i < sr.pairs.size(); ++i) {
        result.checks.push_back(
            detail::verdict_check("salzo_pair" + std::to_string(i), sr.pairs[i].verdict));
      }
    } else if (name == "xi_difference") {
      if (!trace.mu || c.s_refs.size() < 2) {
        throw ConfigError("xi_difference: needs known optimal value and two s_refs");
      }
      double xi1 = 0.0;
      for (const auto& rec : trace.records) {
        if (!rec.xi.empty()) {
          for (double v : rec.xi) xi1 = std::max(xi1, std::abs(v));
          break;
        }
      }
      const double tol = c.xi_rel_tol * std::max(1.0, xi1);
      for (std::size_t b = 1; b < c.s_refs.size(); ++b) {
        const ScalarSeq seq = xi_difference(trace, 0, b);
        result.checks.push_back(detail::verdict_check(
            "xi_difference_0_" + std::to_string(b), verdict(seq, c.verdict_window, tol)));
      }
    } else if (name == "span_projection") {
      if (c.span_generators.empty()) {
        throw ConfigError("span_projection: needs 'span_generators'");
      }
      std::vector<Vector> xs;
      xs.reserve(rows);
      for (const auto& rec : trace.records) xs.push_back(rec.x);
      const auto projected = span_projection(c.span_generators, xs);
      const auto vs = verdict_coordinates(projected, c.verdict_window, c.verdict_tol);
      CheckResult r;
      r.claim = "span_projection";
      r.pass = true;
      r.tol = c.verdict_tol;
      r.window = c.verdict_window;
      for (const auto& v : vs) {
        r.value = std::max(r.value, v.tail_oscillation);
        r.pass = r.pass && v.converged;
      }
      result.checks.push_back(r);
    } else if (name == "limit") {
      if (!c.expected_point) throw ConfigError("limit: needs 'expected_limit'");
      CheckResult r;
      r.claim = "limit";
      r.value = (trace.last().x - *c.expected_point).norm();
      r.tol = c.expected_tol;
      r.pass = !trace.aborted() && r.value <= r.tol;
      r.note = "final iterate k = " + std::to_string(trace.last().k);
      result.checks.push_back(r);
    }
  }
  return result;
}

/// Writes trace.csv, snapshots.json and report.json under c.output_dir.
inline void write_artifacts(const ExperimentConfig& c, const ExperimentResult& r) {
  namespace fs = std::filesystem;
  fs::create_directories(c.output_dir);
  {
    std::ofstream csv(fs::path(c.output_dir) / "trace.csv", std::ios::binary);
    if (!csv) throw Error("cannot write trace.csv in '" + c.output_dir + "'");
    write_trace_csv(r.trace, csv);
  }
  write_text((fs::path(c.output_dir) / "snapshots.json").string(),
             snapshots_json(r.trace, c.snapshot_every).dump(1) + "\n");
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& ch : r.checks) checks.push_back(to_json(ch));
  nlohmann::json report = {
      {"problem", r.trace.problem_id},
      {"method", r.trace.method},
      {"schedule", r.trace.schedule_id},
      {"iterations", r.trace.records.empty() ? 0 : r.trace.last().k},
      {"final_x", to_json(r.trace.last().x)},
      {"aborted_at", r.trace.aborted_at ? nlohmann::json(*r.trace.aborted_at)
                                        : nlohmann::json(nullptr)},
      {"pass", r.pass()},
      {"checks", checks}};
  write_text((fs::path(c.output_dir) / "report.json").string(), report.dump(2) + "\n");
}

// Figure reproduction ---------------------------------------------------------

struct Fig1Data {
  std::vector<Vector> iterates;           // x_0 .. x_{n-1}
  std::vector<Vector> segment_endpoints;  // (0, 1), (1, 0)
};

inline Fig1Data repro_fig1(std::size_t count = 25) {
  if (count < 1) throw Error("repro_fig1: need at least one point");
  const ProblemInstance inst = feasibility_problem();
  Schedule bt = Schedule::beck_teboulle();
  Vector x0(2);
  x0 << 5.0, 0.0;
  const Trace trace = fista_run(inst.problem, x0, bt, std::max<std::size_t>(count - 1, 1));
  Fig1Data d;
  for (std::size_t i = 0; i < count; ++i) d.iterates.push_back(trace.records[i].x);
  d.segment_endpoints = feasibility_segment_endpoints();
  return d;
}

inline std::string fig1_points_text(const Fig1Data& d) {
  std::ostringstream os;
  os << "# FISTA iterates x_k from x_0 = (5, 0), k = 0.." << d.iterates.size() - 1
     << "\n";
  for (const Vector& x : d.iterates) {
    os << format_real(x[0]) << ' ' << format_real(x[1]) << '\n';
  }
  os << "\n# solution segment endpoints\n";
  for (const Vector& x : d.segment_endpoints) {
    os << format_real(x[0]) << ' ' << format_real(x[1]) << '\n';
  }
  return os.str();
}

// BCCH demo ------------------------------------------------------------------

struct BcchDemoOptions {
  std::size_t window = 100;
  double tol = 1e-2;
  double hurdle = 1e3;
  double ell = 0.5;
  double sinh_tol = 2e-4;
};

struct BcchDemoReport {
  std::string scenario;
  std::size_t last_index = 0;  // h is computed through h_{last_index}
  ConvergenceVerdict g_verdict;
  ConvergenceVerdict h_verdict;
  DivergenceWitness witness;
  double h_last = 0.0;
  std::optional<double> reference;  // pi/sinh(pi) for ex44-sinh
  std::optional<double> g_pattern_residual;  // ex42 closed form for g
  bool pass = false;
  std::vector<std::string> lines;
};

/// `last_index` is the index of the final h term; sequences start at 1.
inline BcchDemoReport bcch_demo(const std::string& name, std::size_t last_index,
                                const BcchDemoOptions& opt = {}) {
  const BcchScenario s = scenario_by_name(name, opt.ell);
  const auto start = static_cast<std::size_t>(s.start);
  if (last_index < start + 2 * opt.window + 1) {
    throw Error("bcch_demo: K too small for a verdict window of " +
                std::to_string(opt.window));
  }
  const ScenarioData data = scenario_data(s, last_index - start);

  BcchDemoReport r;
  r.scenario = name;
  r.last_index = last_index;
  r.g_verdict = verdict(data.g, opt.window, opt.tol);
  r.h_verdict = verdict(data.h, opt.window, opt.tol);
  r.witness = divergence_witness(s.phi, last_index - start, s.start);
  r.h_last = data.h.values.back();

  auto fmt = [](double v) { return format_real(v); };
  auto describe = [&](const char* label, const ConvergenceVerdict& v) {
    return std::string(label) + (v.converged ? " converged" : " not converged") +
           ": oscillation " + fmt(v.tail_oscillation) + ", limit estimate " +
           fmt(v.limit_estimate) + " (window " + std::to_string(v.window) +
           ", tol " + fmt(v.tol) + ")";
  };
  r.lines.push_back("scenario " + name + ": " + s.description);
  r.lines.push_back(describe("g", r.g_verdict));
  r.lines.push_back(describe("h", r.h_verdict));
  r.lines.push_back("h_" + std::to_string(last_index) + " = " + fmt(r.h_last));
  r.lines.push_back("sum 1/phi_k = " + fmt(r.witness.sum_inv_phi) +
                    ", sum 1/(1+phi_k) = " + fmt(r.witness.sum_inv_one_plus_phi) +
                    ", prod lambda_k = " + fmt(r.witness.prod_lambda()) +
                    (r.witness.chain_holds ? ", chain inequality holds"
                                           : ", chain inequality FAILS"));

  if (name == "ex42" || name == "ex43") {
    const bool h_ok = r.h_verdict.converged &&
                      std::abs(r.h_verdict.limit_estimate - s.h_limit) <= opt.tol;
    r.pass = !r.g_verdict.converged && h_ok;
    if (name == "ex42") {
      double worst = 0.0;
      for (std::size_t i = 0; i < data.g.size(); ++i) {
        const std::int64_t k = data.g.start + static_cast<std::int64_t>(i);
        const double expected = opt.ell + (k % 2 == 0 ? -2.0 : 2.0);
        worst = std::max(worst, std::abs(data.g.values[i] - expected));
      }
      r.g_pattern_residual = worst;
      r.pass = r.pass && worst <= 1e-12;
      r.lines.push_back("max |g_k - ell - 2(-1)^(k+1)| = " + fmt(worst));
    }
  } else if (name == "ex44-sinh") {
    r.reference = pi_over_sinh_pi();
    const double err = std::abs(r.h_last - *r.reference);
    r.lines.push_back("pi/sinh(pi) = " + fmt(*r.reference) + ", |h - pi/sinh(pi)| = " +
                      fmt(err));
    r.pass = r.g_verdict.converged && std::abs(r.g_verdict.limit_estimate) <= opt.tol &&
             r.h_verdict.converged && err <= opt.sinh_tol &&
             r.h_verdict.limit_estimate >= 0.27;
  } else if (name == "linf-plus") {
    r.pass = r.h_last > opt.hurdle;
    r.lines.push_back("hurdle " + fmt(opt.hurdle) + (r.pass ? " exceeded" : " NOT exceeded"));
  } else if (name == "linf-minus") {
    r.pass = r.h_last < -opt.hurdle;
    r.lines.push_back("hurdle -" + fmt(opt.hurdle) + (r.pass ? " passed below" : " NOT passed"));
  }
  r.lines.push_back(r.pass ? "PASS" : "FAIL");
  return r;
}

// Schedule validation -----------------------------------------------------------

struct ScheduleValidation {
  std::string name;
  ScheduleReport conditions;
  std::optional<RyuBoundsReport> bounds;
  bool pass = false;
  std::vector<std::string> lines;
};

/// t_0..t_K for "bt", "linear" or "constant-ones".
inline std::vector<double> named_schedule(const std::string& name, std::size_t last) {
  if (name == "constant-ones") return std::vector<double>(last + 1, 1.0);
  Schedule s = name == "bt"       ? Schedule::beck_teboulle()
               : name == "linear" ? Schedule::linear()
                                  : throw Error("unknown schedule '" + name + "'");
  const auto p = s.prefix(last);
  return {p.begin(), p.end()};
}

inline ScheduleValidation validate_named_schedule(const std::string& name,
                                                  std::size_t last) {
  if (last < 3) throw Error("validate: K must be at least 3");
  const std::vector<double> ts = named_schedule(name, last);
  ScheduleValidation v;
  v.name = name;
  v.conditions = validate_schedule(ts);
  v.bounds = ryu_bounds_check(ts);
  const auto fmt = [](double x) { return format_real(x); };
  v.lines.push_back("schedule " + name + ", t_0..t_" + std::to_string(last));
  if (v.conditions.valid()) {
    v.lines.push_back("growth and recursion conditions: valid");
  } else {
    for (const auto& g : v.conditions.growth_violations) {
      v.lines.push_back("invalid: growth condition violated at k = " + std::to_string(g.k) +
                        " (scaled residual " + fmt(g.residual) + ")");
      break;
    }
    for (const auto& g : v.conditions.recursion_violations) {
      v.lines.push_back("invalid: recursion condition violated at k = " +
                        std::to_string(g.k) + " (scaled residual " + fmt(g.residual) + ")");
      break;
    }
    v.lines.push_back("violations: " + std::to_string(v.conditions.growth_violations.size()) +
                      " growth, " +
                      std::to_string(v.conditions.recursion_violations.size()) +
                      " recursion");
  }
  v.lines.push_back("max |recursion residual| = " +
                    fmt(v.conditions.max_abs_recursion_residual));
  const RyuBoundsReport& b = *v.bounds;
  v.lines.push_back(std::string("1 <= t_k - 1 <= k for k >= 2: ") +
                    (b.pass() ? "holds" : "violated at k = " + std::to_string(b.violations.front())) +
                    " (min t_k - 1 = " + fmt(b.min_gap) + ", max (t_k - 1)/k = " +
                    fmt(b.max_gap_ratio) + ")");
  v.lines.push_back("sum_{k=2}^{" + std::to_string(last) + "} 1/(t_k - 1) = " + fmt(b.total()));
  v.pass = v.conditions.valid() && b.pass();
  v.lines.push_back(v.pass ? "PASS" : "FAIL");
  return v;
}

}  // namespace fista_lab

#endif  // FISTA_LAB_EXPERIMENT_HPP
