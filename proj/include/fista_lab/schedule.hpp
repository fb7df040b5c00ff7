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

#ifndef FISTA_LAB_SCHEDULE_HPP
#define FISTA_LAB_SCHEDULE_HPP

// Momentum parameter sequences t_0, t_1, ... and their certification against
//   growth:     t_k >= (k + 2) / 2 >= 1 = t_0
//   recursion:  t_k^2 >= t_{k+1}^2 - t_{k+1}

#include "fista_lab/core.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fista_lab {

/// Larger root of t^2 - t - t_k^2 = 0.
inline double bt_next(double t_k) {
  if (!(t_k >= 1.0)) throw Error("bt_next: t_k must be at least 1");
  return 0.5 * (1.0 + std::sqrt(4.0 * t_k * t_k + 1.0));
}

/// t_0 = 1, t_k = (k + 2) / 2 for k >= 1.
inline double linear_half(std::size_t k) {
  return k == 0 ? 1.0 : 0.5 * (static_cast<double>(k) + 2.0);
}

// Relative slack allowed before a condition counts as violated.
inline constexpr double kScheduleTol = 1e-12;

struct ScheduleViolation {
  std::size_t k;
  double residual;  // negative means violated
};

struct ScheduleReport {
  std::vector<ScheduleViolation> growth_violations;
  std::vector<ScheduleViolation> recursion_violations;
  // Largest |t_k^2 - t_{k+1}^2 + t_{k+1}| / max(1, t_{k+1}^2) over the list.
  double max_abs_recursion_residual = 0.0;
  double min_recursion_residual = kInf;

  bool valid() const {
    return growth_violations.empty() && recursion_violations.empty();
  }
};

/// Residual of the recursion condition at k, scaled by max(1, t_{k+1}^2).
inline double recursion_residual(double t_k, double t_next) {
  const double raw = t_k * t_k - (t_next * t_next - t_next);
  return raw / std::max(1.0, t_next * t_next);
}

inline ScheduleReport validate_schedule(std::span<const double> ts) {
  if (ts.size() < 2) {
    throw Error("validate_schedule: need at least t_0 and t_1");
  }
  ScheduleReport report;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double floor_k = 0.5 * (static_cast<double>(k) + 2.0);
    const double growth = (ts[k] - floor_k) / std::max(1.0, floor_k);
    const bool bad_start = k == 0 && ts[0] != 1.0;
    if (!std::isfinite(ts[k]) || growth < -kScheduleTol || bad_start) {
      report.growth_violations.push_back({k, bad_start ? ts[0] - 1.0 : growth});
    }
    if (k + 1 < ts.size()) {
      const double r = recursion_residual(ts[k], ts[k + 1]);
      report.max_abs_recursion_residual =
          std::max(report.max_abs_recursion_residual, std::abs(r));
      report.min_recursion_residual = std::min(report.min_recursion_residual, r);
      if (!(r >= -kScheduleTol)) report.recursion_violations.push_back({k, r});
    }
  }
  return report;
}

struct RyuBoundsReport {
  std::vector<std::size_t> violations;  // k with t_k - 1 outside [1, k]
  std::vector<double> partial_sums;     // sum_{j=2..k} 1/(t_j - 1), k >= 2
  double min_gap = kInf;                // min over k >= 2 of (t_k - 1)
  double max_gap_ratio = 0.0;           // max over k >= 2 of (t_k - 1) / k

  bool pass() const { return violations.empty(); }
  double total() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

/// Checks 1 <= t_k - 1 <= k for k >= 2 and accumulates sum 1/(t_k - 1).
inline RyuBoundsReport ryu_bounds_check(std::span<const double> ts) {
  if (ts.size() < 3) throw Error("ryu_bounds_check: need t_0..t_2 at least");
  RyuBoundsReport report;
  report.partial_sums.reserve(ts.size() - 2);
  double sum = 0.0;
  for (std::size_t k = 2; k < ts.size(); ++k) {
    const double gap = ts[k] - 1.0;
    const double kd = static_cast<double>(k);
    if (!(gap >= 1.0 - kScheduleTol) || !(gap <= kd * (1.0 + kScheduleTol))) {
      report.violations.push_back(k);
    }
    report.min_gap = std::min(report.min_gap, gap);
    report.max_gap_ratio = std::max(report.max_gap_ratio, gap / kd);
    sum += 1.0 / gap;
    report.partial_sums.push_back(sum);
  }
  return report;
}

/// Lazily extended parameter sequence. Extension mutates the cache, so
/// generate the prefix you need before sharing the object across threads.
class Schedule {
 public:
  enum class Rule { kBeckTeboulle, kLinearHalf, kExplicit };

  static Schedule beck_teboulle() { return Schedule(Rule::kBeckTeboulle, {}); }
  static Schedule linear() { return Schedule(Rule::kLinearHalf, {}); }
  static Schedule explicit_values(std::vector<double> ts) {
    if (ts.empty()) throw Error("schedule: explicit list is empty");
    return Schedule(Rule::kExplicit, std::move(ts));
  }

  Rule rule() const { return rule_; }

  std::string id() const {
    switch (rule_) {
      case Rule::kBeckTeboulle: return "bt";
      case Rule::kLinearHalf: return "linear";
      case Rule::kExplicit: return "explicit";
    }
    return "unknown";
  }

  double at(std::size_t k) {
    extend_to(k);
    return cache_[k];
  }

  /// t_0..t_last inclusive.
  std::span<const double> prefix(std::size_t last) {
    extend_to(last);
    return std::span<const double>(cache_.data(), last + 1);
  }

  std::span<const double> cached() const { return cache_; }

 private:
  Schedule(Rule rule, std::vector<double> ts)
      : rule_(rule), cache_(std::move(ts)) {
    if (cache_.empty()) cache_.push_back(1.0);
  }

  void extend_to(std::size_t k) {
    if (k < cache_.size()) return;
    if (rule_ == Rule::kExplicit) {
      throw Error("schedule: explicit list has " +
                  std::to_string(cache_.size()) + " entries, t_" +
                  std::to_string(k) + " requested");
    }
    cache_.reserve(k + 1);
    while (cache_.size() <= k) {
      const std::size_t next = cache_.size();
      const double t = rule_ == Rule::kBeckTeboulle ? bt_next(cache_.back())
                                                    : linear_half(next);
      // Both generated rules satisfy the conditions by construction; a failure
      // here means roundoff broke them.
      if (recursion_residual(cache_.back(), t) < -kScheduleTol ||
          t < 0.5 * (static_cast<double>(next) + 2.0) * (1.0 - kScheduleTol)) {
        throw Error("schedule: generated t_" + std::to_string(next) +
                    " violates the parameter conditions");
      }
      cache_.push_back(t);
    }
  }

  Rule rule_;
  std::vector<double> cache_;
};

}  // namespace fista_lab

#endif  // FISTA_LAB_SCHEDULE_HPP
