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

#ifndef FISTA_LAB_DIAGNOSTICS_HPP
#define FISTA_LAB_DIAGNOSTICS_HPP

#include "fista_lab/core.hpp"
#include "fista_lab/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fista_lab {

/// values[i] is the term with index start + i.
struct ScalarSeq {
  std::string label;
  std::int64_t start = 0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  std::int64_t end_index() const {
    return start + static_cast<std::int64_t>(values.size());
  }
  double at(std::int64_t k) const {
    if (k < start || k >= end_index()) {
      throw Error("sequence '" + label + "': index " + std::to_string(k) +
                  " out of range");
    }
    return values[static_cast<std::size_t>(k - start)];
  }
};

/// Finite stand-in for "converges": oscillation over the last `window` terms.
struct ConvergenceVerdict {
  bool converged = false;
  double limit_estimate = kNaN;
  double tail_oscillation = kInf;
  std::size_t window = 0;
  double tol = 0.0;
  bool nonfinite_tail = false;
};

inline ConvergenceVerdict verdict(std::span<const double> values,
                                  std::size_t window, double tol) {
  if (window < 2 || window > values.size() / 2) {
    throw Error("verdict: window must lie in [2, length/2], got " +
                std::to_string(window) + " for length " +
                std::to_string(values.size()));
  }
  ConvergenceVerdict v;
  v.window = window;
  v.tol = tol;
  const auto tail = values.subspan(values.size() - window);
  if (!std::all_of(tail.begin(), tail.end(),
                   [](double x) { return std::isfinite(x); })) {
    v.nonfinite_tail = true;
    return v;
  }
  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  v.tail_oscillation = *hi - *lo;
  double sum = 0.0;
  for (double x : tail) sum += x;
  v.limit_estimate = sum / static_cast<double>(window);
  v.converged = v.tail_oscillation <= tol;
  return v;
}

inline ConvergenceVerdict verdict(const ScalarSeq& seq, std::size_t window,
                                  double tol) {
  return verdict(std::span<const double>(seq.values), window, tol);
}

enum class IterateKind { kX, kY, kZ };

namespace detail {

inline const Vector& pick(const IterateRecord& rec, IterateKind which) {
  switch (which) {
    case IterateKind::kX: return rec.x;
    case IterateKind::kY: return rec.y;
    case IterateKind::kZ: return rec.z;
  }
  return rec.x;
}

inline void require_snapshots(const Trace& trace) {
  for (const IterateRecord& rec : trace.records) {
    if (!rec.has_vectors()) {
      throw Error("trace row " + std::to_string(rec.k) +
                  " has no vector snapshot; rerun with snapshot_every = 1");
    }
  }
}

}  // namespace detail

/// values[k] = <iterate_k, d>.
inline ScalarSeq inner_product_seq(const Trace& trace, IterateKind which,
                                   const Vector& d) {
  if (!all_finite(d)) throw Error("inner_product_seq: direction not finite");
  detail::require_snapshots(trace);
  ScalarSeq seq;
  seq.label = std::string("<") + "xyz"[static_cast<int>(which)] + "_k, d>";
  seq.values.reserve(trace.records.size());
  for (const IterateRecord& rec : trace.records) {
    const Vector& v = detail::pick(rec, which);
    require_dim(d, static_cast<std::size_t>(v.size()));
    seq.values.push_back(v.dot(d));
  }
  return seq;
}

/// With h_k = <x_k, d> and g_k = h_{k+1} + (t_k - 1)(h_{k+1} - h_k), returns
/// max_k |g_k - <z_{k+1}, d>|.
inline double check_claim2_identity(const Trace& trace, const Vector& d) {
  detail::require_snapshots(trace);
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    const IterateRecord& cur = trace.records[i];
    const IterateRecord& next = trace.records[i + 1];
    const double h = cur.x.dot(d);
    const double h_next = next.x.dot(d);
    const double g = h_next + (cur.t - 1.0) * (h_next - h);
    worst = std::max(worst, std::abs(g - next.z.dot(d)));
  }
  return worst;
}

/// Tolerance paired with check_claim2_identity: 1e-9 max(1, ||d|| sup ||x_k||).
inline double claim2_tolerance(const Trace& trace, const Vector& d) {
  double sup_x = 0.0;
  for (const IterateRecord& rec : trace.records) {
    sup_x = std::max(sup_x, rec.norm_x);
  }
  return 1e-9 * std::max(1.0, d.norm() * sup_x);
}

/// Orthogonal projector onto span(C), built by two-pass Gram-Schmidt.
class SubspaceProjector {
 public:
  static constexpr double kRankTol = 1e-10;

  explicit SubspaceProjector(const std::vector<Vector>& generators) {
    if (generators.empty()) throw Error("span_projection: C is empty");
    const Eigen::Index n = generators.front().size();
    if (n == 0) throw Error("span_projection: zero-dimensional vectors");
    std::vector<Vector> basis;
    for (const Vector& c : generators) {
      require_dim(c, static_cast<std::size_t>(n));
      if (!all_finite(c)) throw Error("span_projection: non-finite generator");
      Vector r = c;
      for (int pass = 0; pass < 2; ++pass) {
        for (const Vector& q : basis) r -= q.dot(r) * q;
      }
      const double norm = r.norm();
      if (norm <= kRankTol * std::max(1.0, c.norm())) continue;
      basis.push_back(r / norm);
    }
    if (basis.empty()) throw Error("span_projection: C spans only {0}");
    q_.resize(n, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) {
      q_.col(static_cast<Eigen::Index>(j)) = basis[j];
    }
  }

  std::size_t rank() const { return static_cast<std::size_t>(q_.cols()); }
  std::size_t dim() const { return static_cast<std::size_t>(q_.rows()); }
  const Eigen::MatrixXd& basis() const { return q_; }

  Vector project(const Vector& x) const {
    require_dim(x, dim());
    return q_ * (q_.transpose() * x);
  }

 private:
  Eigen::MatrixXd q_;  // orthonormal columns
};

inline std::vector<Vector> span_projection(const std::vector<Vector>& c,
                                           const std::vector<Vector>& xs) {
  const SubspaceProjector proj(c);
  std::vector<Vector> out;
  out.reserve(xs.size());
  for (const Vector& x : xs) out.push_back(proj.project(x));
  return out;
}

/// Per-coordinate verdicts on a vector sequence; all must converge.
inline std::vector<ConvergenceVerdict> verdict_coordinates(
    const std::vector<Vector>& xs, std::size_t window, double tol) {
  if (xs.empty()) throw Error("verdict_coordinates: empty sequence");
  std::vector<ConvergenceVerdict> out;
  const Eigen::Index n = xs.front().size();
  std::vector<double> coord(xs.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < xs.size(); ++k) coord[k] = xs[k][j];
    out.push_back(verdict(std::span<const double>(coord), window, tol));
  }
  return out;
}

struct SalzoPairResult {
  Vector w1, w2;
  ConvergenceVerdict verdict;
};

struct SalzoReport {
  std::vector<SalzoPairResult> pairs;
  bool consistent() const {
    return std::all_of(pairs.begin(), pairs.end(),
                       [](const SalzoPairResult& p) { return p.verdict.converged; });
  }
};

/// Verdict on <x_k, w1 - w2> for each candidate pair of cluster points.
inline SalzoReport salzo_check(
    const Trace& trace, const std::vector<std::pair<Vector, Vector>>& pairs,
    std::size_t window, double tol) {
  SalzoReport report;
  for (const auto& [w1, w2] : pairs) {
    const ScalarSeq seq = inner_product_seq(trace, IterateKind::kX, w1 - w2);
    report.pairs.push_back({w1, w2, verdict(seq, window, tol)});
  }
  return report;
}

/// Every unordered pair drawn from `points`.
inline std::vector<std::pair<Vector, Vector>> all_pairs(
    const std::vector<Vector>& points) {
  std::vector<std::pair<Vector, Vector>> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      out.emplace_back(points[i], points[j]);
  return out;
}

/// xi_k(s_a) - xi_k(s_b) over the rows where both are recorded.
inline ScalarSeq xi_difference(const Trace& trace, std::size_t a,
                               std::size_t b) {
  ScalarSeq seq;
  seq.label = "xi(s" + std::to_string(a) + ") - xi(s" + std::to_string(b) + ")";
  bool started = false;
  for (const IterateRecord& rec : trace.records) {
    if (rec.xi.size() <= std::max(a, b)) continue;
    if (!started) {
      seq.start = static_cast<std::int64_t>(rec.k);
      started = true;
    }
    seq.values.push_back(rec.xi[a] - rec.xi[b]);
  }
  return seq;
}

}  // namespace fista_lab

#endif  // FISTA_LAB_DIAGNOSTICS_HPP
