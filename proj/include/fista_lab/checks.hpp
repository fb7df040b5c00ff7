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

#ifndef FISTA_LAB_CHECKS_HPP
#define FISTA_LAB_CHECKS_HPP

// Finite-iterate checks of the inequalities FISTA's convergence analysis
// relies on. Each returns a CheckResult whose `value` is the worst observed
// residual (or slack) and `tol` the threshold it was compared against.

#include "fista_lab/core.hpp"
#include "fista_lab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fista_lab {

struct CheckResult {
  std::string claim;
  bool pass = false;
  double value = 0.0;
  double tol = 0.0;
  std::optional<std::size_t> window;
  std::string note;
};

/// delta_k <= 2 beta dist^2(x0, S) / (k + 1)^2 + 1e-9 max(1, beta ||x0||^2)
/// for every row k >= 1 (beta dist^2(x0, S) / (2k) on PGM traces). `value` is
/// the largest excess delta_k - bound.
/// When the problem has no closed-form distance to S, ||x0 - s_ref|| is used
/// and the result is flagged in `note`.
inline CheckResult check_rate_bound(const Trace& trace,
                                    const CompositeProblem& problem) {
  CheckResult r;
  r.claim = "rate_bound";
  if (!problem.solution || !trace.mu) {
    r.pass = true;
    r.note = "skipped: optimal value unknown";
    return r;
  }
  const SolutionInfo& sol = *problem.solution;
  const double dist = sol.distance(trace.x0);
  if (!sol.has_exact_distance()) r.note = "per-s bound (distance to S unavailable)";
  r.tol = 1e-9 * std::max(1.0, trace.beta * trace.x0.squaredNorm());
  r.value = -kInf;
  for (const IterateRecord& rec : trace.records) {
    if (rec.k == 0 || !rec.delta) continue;
    const double k = static_cast<double>(rec.k);
    const double bound = trace.method == "pgm"
                             ? trace.beta * dist * dist / (2.0 * k)
                             : 2.0 * trace.beta * dist * dist / ((k + 1.0) * (k + 1.0));
    r.value = std::max(r.value, *rec.delta - bound);
  }
  r.pass = r.value <= r.tol;
  return r;
}

/// For each reference solution s: 0 <= xi_{k+1} <= xi_k (within
/// 1e-9 max(1, xi_1)), xi_1 <= (beta/2)||x0 - s||^2 + 1e-9 and xi_k >= -1e-10.
/// `value` is the largest violation found across all three (<= 0 is clean).
inline std::vector<CheckResult> check_lyapunov(const Trace& trace) {
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < trace.s_refs.size(); ++i) {
    CheckResult r;
    r.claim = "lyapunov_s" + std::to_string(i);
    if (!trace.mu) {
      r.pass = true;
      r.note = "skipped: optimal value unknown";
      out.push_back(r);
      continue;
    }
    const Vector& s = trace.s_refs[i];
    double xi1 = kNaN;
    double prev = kNaN;
    double worst_step = -kInf;
    double worst_floor = -kInf;
    for (const IterateRecord& rec : trace.records) {
      if (rec.xi.size() <= i) continue;
      const double xi = rec.xi[i];
      if (std::isnan(xi1)) xi1 = xi;
      worst_floor = std::max(worst_floor, -1e-10 - xi);
      if (!std::isnan(prev) && std::isfinite(prev)) {
        worst_step = std::max(worst_step, xi - prev);
      }
      prev = xi;
    }
    if (std::isnan(xi1)) {
      r.pass = false;
      r.note = "no xi values recorded";
      out.push_back(r);
      continue;
    }
    const double step_tol = 1e-9 * std::max(1.0, std::abs(xi1));
    const double start_excess =
        xi1 - 0.5 * trace.beta * (trace.x0 - s).squaredNorm() - 1e-9;
    r.tol = step_tol;
    r.value = std::max({worst_step - step_tol, start_excess, worst_floor});
    r.pass = r.value <= 0.0;
    r.note = "max step increase " + std::to_string(worst_step);
    out.push_back(r);
  }
  return out;
}

/// Worst scaled residual of the three algebraic identities tying x, y, z.
inline CheckResult check_structural(const Trace& trace, double tol = 1e-9) {
  CheckResult r;
  r.claim = "structural_identities";
  r.tol = tol;
  for (const IterateRecord& rec : trace.records) {
    for (double v : {rec.res_zdef, rec.res_zid, rec.res_convex}) {
      if (!std::isnan(v)) r.value = std::max(r.value, v);
    }
  }
  r.pass = r.value <= tol;
  return r;
}

/// sup ||x_k|| <= max(||x_0||, sup ||z_k||) + 1e-8.
inline CheckResult check_bounded_iterates(const Trace& trace) {
  CheckResult r;
  r.claim = "bounded_iterates";
  r.tol = 1e-8;
  double sup_x = 0.0;
  double sup_z = 0.0;
  for (const IterateRecord& rec : trace.records) {
    sup_x = std::max(sup_x, rec.norm_x);
    sup_z = std::max(sup_z, rec.norm_z);
  }
  r.value = sup_x - std::max(trace.x0.norm(), sup_z);
  r.pass = r.value <= r.tol;
  return r;
}

/// Rowwise ||y_k - x_k|| <= (||z_k|| + ||x_k||) / t_k, and on runs with at
/// least 20 rows the last-decile max gap sits below the first-decile max.
inline CheckResult check_vanishing_gap(const Trace& trace) {
  CheckResult r;
  r.claim = "vanishing_gap";
  r.tol = 1e-12;
  for (const IterateRecord& rec : trace.records) {
    const double bound = (rec.norm_z + rec.norm_x) / rec.t;
    r.value = std::max(r.value,
                       (rec.gap_xy - bound) / std::max(1.0, bound));
  }
  r.pass = r.value <= r.tol;
  const std::size_t n = trace.records.size();
  if (n >= 20) {
    const std::size_t dec = n / 10;
    double first = 0.0;
    double last = 0.0;
    for (std::size_t i = 0; i < dec; ++i) {
      first = std::max(first, trace.records[i].gap_xy);
      last = std::max(last, trace.records[n - 1 - i].gap_xy);
    }
    r.note = "first-decile max " + std::to_string(first) +
             ", last-decile max " + std::to_string(last);
    if (!(last < first)) r.pass = false;
  }
  return r;
}

/// Sufficient decrease against arbitrary probes: for every probe x with
/// F(x) < inf and every selected row k, with y = y_k and y+ = x_{k+1}.
/// `value` is the smallest scaled slack.
inline CheckResult check_sufficient_decrease(
    const CompositeProblem& problem, const Trace& trace,
    const std::vector<Vector>& probes, const std::vector<std::size_t>& rows,
    double tol = 1e-9) {
  CheckResult r;
  r.claim = "sufficient_decrease";
  r.tol = tol;
  r.value = kInf;
  std::size_t used = 0;
  for (std::size_t k : rows) {
    if (k + 1 >= trace.records.size()) continue;
    const IterateRecord& cur = trace.records[k];
    const IterateRecord& next = trace.records[k + 1];
    if (!cur.has_vectors() || !next.has_vectors()) {
      throw Error("sufficient decrease: rows " + std::to_string(k) + "/" +
                  std::to_string(k + 1) +
                  " have no vector snapshot; use snapshot_every = 1");
    }
    for (const Vector& x : probes) {
      const double slack =
          sufficient_decrease_slack(problem, x, cur.y, next.x);
      if (std::isnan(slack)) continue;
      r.value = std::min(r.value, slack);
      ++used;
    }
  }
  r.note = std::to_string(used) + " probe/row pairs";
  r.pass = used > 0 && r.value >= -tol;
  return r;
}

/// Probes drawn uniformly from [-radius, radius]^n and mapped into dom g.
template <class Instance>
std::vector<Vector> domain_probes(const Instance& inst, std::size_t count,
                                  double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-radius, radius);
  std::vector<Vector> out;
  out.reserve(count);
  const auto n = static_cast<Eigen::Index>(inst.problem.dim);
  for (std::size_t i = 0; i < count; ++i) {
    Vector v(n);
    for (Eigen::Index j = 0; j < n; ++j) v[j] = unif(rng);
    out.push_back(inst.to_domain(v));
  }
  return out;
}

/// `count` row indices spread evenly over [0, last_row).
inline std::vector<std::size_t> spread_rows(std::size_t last_row,
                                            std::size_t count) {
  std::vector<std::size_t> rows;
  if (last_row == 0 || count == 0) return rows;
  count = std::min(count, last_row);
  for (std::size_t i = 0; i < count; ++i) {
    rows.push_back(i * last_row / count);
  }
  return rows;
}

}  // namespace fista_lab

#endif  // FISTA_LAB_CHECKS_HPP
