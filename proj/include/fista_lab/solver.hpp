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

#ifndef FISTA_LAB_SOLVER_HPP
#define FISTA_LAB_SOLVER_HPP

// Proximal gradient operator, PGM and FISTA. Every run returns a Trace with
// one row per iterate:
//
//   x_{k+1} = T y_k,   T = prox_{g/beta}(. - grad f(.)/beta)
//   y_{k+1} = x_{k+1} + ((t_k - 1) / t_{k+1}) (x_{k+1} - x_k),   y_0 = x_0
//   z_k     = (1 - t_k) x_k + t_k y_k
//   delta_k = F(x_k) - mu
//   xi_k(s) = t_{k-1}^2 delta_k + (beta/2) ||z_k - s||^2,   k >= 1
//
// Residual columns are scaled by max(1, magnitude of the terms involved) so
// that long runs separate genuine violations from roundoff.

#include "fista_lab/core.hpp"
#include "fista_lab/schedule.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fista_lab {

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct IterateRecord {
  std::size_t k = 0;
  double t = 1.0;
  // Empty when the run did not retain vectors for this row.
  Vector x, y, z;
  double F_x = kNaN;
  std::optional<double> delta;  // absent when mu is unknown
  std::vector<double> xi;       // one per reference solution; empty at k = 0

  // Scaled residuals, NaN where undefined for the row.
  double res_zdef = kNaN;     // y_k vs (1 - 1/t_k) x_k + z_k / t_k
  double res_zid = kNaN;      // z_k vs (1 - t_{k-1}) x_{k-1} + t_{k-1} x_k
  double res_convex = kNaN;   // x_k vs (1 - 1/t_{k-1}) x_{k-1} + z_k / t_{k-1}
  double res_suffdec = kNaN;  // sufficient-decrease slack at (x_{k-1}, y_{k-1})

  double gap_xy = 0.0;  // ||y_k - x_k||
  double norm_x = 0.0;
  double norm_z = 0.0;

  bool has_vectors() const { return x.size() > 0; }
};

struct Trace {
  std::string problem_id;
  std::string schedule_id;
  std::string method;  // "fista", "pgm" or "nesterov"
  double beta = 1.0;
  std::optional<double> mu;
  Vector x0;
  std::vector<Vector> s_refs;
  std::vector<IterateRecord> records;
  // Row index of the first non-finite iterate; that row is kept.
  std::optional<std::size_t> aborted_at;

  bool aborted() const { return aborted_at.has_value(); }
  const IterateRecord& last() const { return records.back(); }
};

/// T y = prox_{g/beta}(y - grad f(y) / beta).
inline Vector t_operator(const CompositeProblem& problem, const Vector& y) {
  require_dim(y, problem.dim);
  const double step = 1.0 / problem.beta();
  return problem.g.prox(y - step * problem.f.gradient(y), step);
}

/// F(x) - F(y+) - (beta/2)(||x - y+||^2 - ||x - y||^2), scaled. NaN if F(x) is
/// not finite.
inline double sufficient_decrease_slack(const CompositeProblem& problem,
                                        const Vector& x, const Vector& y,
                                        const Vector& y_plus) {
  const double fx = eval_F(problem, x);
  if (!std::isfinite(fx)) return kNaN;
  const double fy = eval_F(problem, y_plus);
  const double half_beta = 0.5 * problem.beta();
  const double a = half_beta * (x - y_plus).squaredNorm();
  const double b = half_beta * (x - y).squaredNorm();
  const double slack = fx - fy - (a - b);
  const double scale =
      std::max({1.0, std::abs(fx), std::abs(fy), std::abs(a), std::abs(b)});
  return slack / scale;
}

struct RunOptions {
  std::vector<Vector> s_refs;
  // Keep x, y, z for rows with k % keep_vectors_every == 0 (and the last row).
  std::size_t keep_vectors_every = 1;
};

namespace detail {

inline double scaled_norm(const Vector& v, double scale) {
  return v.norm() / std::max(1.0, scale);
}

inline void fill_objective(const CompositeProblem& problem, const Trace& trace,
                           IterateRecord& rec, double t_prev) {
  rec.F_x = eval_F(problem, rec.x);
  if (!trace.mu) return;
  rec.delta = rec.F_x == kInf ? kInf : rec.F_x - *trace.mu;
  if (rec.k == 0) return;
  rec.xi.reserve(trace.s_refs.size());
  for (const Vector& s : trace.s_refs) {
    const double lyap = 0.5 * trace.beta * (rec.z - s).squaredNorm();
    rec.xi.push_back(*rec.delta == kInf ? kInf
                                        : t_prev * t_prev * *rec.delta + lyap);
  }
}

inline Trace start_trace(const CompositeProblem& problem, const Vector& x0,
                         std::string schedule_id, std::string method,
                         const RunOptions& options) {
  require_dim(x0, problem.dim);
  if (!all_finite(x0)) throw Error("run: x0 has non-finite coordinates");
  if (options.keep_vectors_every == 0) {
    throw Error("run: keep_vectors_every must be at least 1");
  }
  for (const Vector& s : options.s_refs) require_dim(s, problem.dim);
  Trace trace;
  trace.problem_id = problem.name;
  trace.schedule_id = std::move(schedule_id);
  trace.method = std::move(method);
  trace.beta = problem.beta();
  if (problem.solution) trace.mu = problem.solution->mu;
  trace.x0 = x0;
  trace.s_refs = options.s_refs;
  return trace;
}

inline void drop_vectors(std::vector<IterateRecord>& records,
                         std::size_t keep_every) {
  if (keep_every <= 1) return;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    if (records[i].k % keep_every != 0) {
      records[i].x = Vector();
      records[i].y = Vector();
      records[i].z = Vector();
    }
  }
}

}  // namespace detail

/// PGM: x_{k+1} = T x_k. Rows carry t = 1 and y = z = x.
inline Trace pgm_run(const CompositeProblem& problem, const Vector& x0,
                     std::size_t iterations, const RunOptions& options = {}) {
  if (iterations == 0) throw Error("pgm_run: need at least one iteration");
  Trace trace = detail::start_trace(problem, x0, "none", "pgm", options);
  trace.records.reserve(iterations + 1);

  auto make_row = [&](std::size_t k, const Vector& x) {
    IterateRecord rec;
    rec.k = k;
    rec.x = x;
    rec.y = x;
    rec.z = x;
    rec.norm_x = rec.norm_z = x.norm();
    return rec;
  };

  IterateRecord first = make_row(0, x0);
  first.F_x = eval_F(problem, x0);
  if (trace.mu) first.delta = first.F_x == kInf ? kInf : first.F_x - *trace.mu;
  trace.records.push_back(std::move(first));

  Vector x = x0;
  for (std::size_t k = 0; k < iterations; ++k) {
    Vector x_next = t_operator(problem, x);
    IterateRecord rec = make_row(k + 1, x_next);
    if (!all_finite(x_next)) {
      trace.records.push_back(std::move(rec));
      trace.aborted_at = k + 1;
      break;
    }
    rec.F_x = eval_F(problem, x_next);
    if (trace.mu) rec.delta = rec.F_x - *trace.mu;
    rec.res_suffdec = sufficient_decrease_slack(problem, x, x, x_next);
    trace.records.push_back(std::move(rec));
    x = std::move(x_next);
  }
  detail::drop_vectors(trace.records, options.keep_vectors_every);
  return trace;
}

/// FISTA with momentum parameters from `schedule`. The schedule must satisfy
/// the parameter conditions over t_0..t_iterations; it is rejected otherwise.
inline Trace fista_run(const CompositeProblem& problem, const Vector& x0,
                       Schedule& schedule, std::size_t iterations,
                       const RunOptions& options = {}) {
  if (iterations == 0) throw Error("fista_run: need at least one iteration");
  const std::span<const double> ts = schedule.prefix(iterations);
  const ScheduleReport sched = validate_schedule(ts);
  if (!sched.valid()) {
    const std::size_t k = !sched.growth_violations.empty()
                              ? sched.growth_violations.front().k
                              : sched.recursion_violations.front().k;
    throw Error("fista_run: schedule violates the parameter conditions at k = " +
                std::to_string(k));
  }

  Trace trace =
      detail::start_trace(problem, x0, schedule.id(), "fista", options);
  trace.records.reserve(iterations + 1);

  IterateRecord first;
  first.k = 0;
  first.t = ts[0];
  first.x = x0;
  first.y = x0;
  first.z = (1.0 - ts[0]) * x0 + ts[0] * x0;
  first.res_zdef = 0.0;
  first.norm_x = x0.norm();
  first.norm_z = first.z.norm();
  detail::fill_objective(problem, trace, first, 0.0);
  trace.records.push_back(std::move(first));

  Vector x = x0;
  Vector y = x0;
  for (std::size_t k = 0; k < iterations; ++k) {
    const double t_k = ts[k];
    const double t_next = ts[k + 1];

    IterateRecord rec;
    rec.k = k + 1;
    rec.t = t_next;
    rec.x = t_operator(problem, y);
    if (!all_finite(rec.x)) {
      trace.records.push_back(std::move(rec));
      trace.aborted_at = k + 1;
      break;
    }
    rec.y = rec.x + ((t_k - 1.0) / t_next) * (rec.x - x);
    rec.z = (1.0 - t_next) * rec.x + t_next * rec.y;

    const Vector z_from_x = (1.0 - t_k) * x + t_k * rec.x;
    const Vector y_back =
        (1.0 - 1.0 / t_next) * rec.x + (1.0 / t_next) * rec.z;
    const Vector x_back = (1.0 - 1.0 / t_k) * x + (1.0 / t_k) * rec.z;

    const double mag = std::max({x.norm(), rec.x.norm(), rec.y.norm()});
    rec.res_zdef = detail::scaled_norm(rec.y - y_back, t_next * mag);
    rec.res_zid = detail::scaled_norm(rec.z - z_from_x, std::max(t_k, t_next) * mag);
    rec.res_convex = detail::scaled_norm(rec.x - x_back, std::max(t_k, t_next) * mag);
    rec.res_suffdec = sufficient_decrease_slack(problem, x, y, rec.x);

    rec.gap_xy = (rec.y - rec.x).norm();
    rec.norm_x = rec.x.norm();
    rec.norm_z = rec.z.norm();
    detail::fill_objective(problem, trace, rec, t_k);

    x = rec.x;
    y = rec.y;
    trace.records.push_back(std::move(rec));
  }
  detail::drop_vectors(trace.records, options.keep_vectors_every);
  return trace;
}

/// Accelerated gradient descent: FISTA on a problem whose g is identically 0.
inline Trace nesterov_run(const CompositeProblem& problem, const Vector& x0,
                          Schedule& schedule, std::size_t iterations,
                          const RunOptions& options = {}) {
  if (!problem.g.identically_zero()) {
    throw Error("nesterov_run: the nonsmooth part must be identically zero");
  }
  Trace trace = fista_run(problem, x0, schedule, iterations, options);
  trace.method = "nesterov";
  return trace;
}

}  // namespace fista_lab

#endif  // FISTA_LAB_SOLVER_HPP
