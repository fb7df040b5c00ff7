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

#ifndef FISTA_LAB_CORE_HPP
#define FISTA_LAB_CORE_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fista_lab {

/// Dense element of R^n. Every problem instance fixes n for its lifetime.
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  DimensionError(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

inline bool all_finite(const Vector& v) { return v.allFinite(); }

inline void require_dim(const Vector& v, std::size_t dim) {
  if (static_cast<std::size_t>(v.size()) != dim) {
    throw DimensionError(dim, static_cast<std::size_t>(v.size()));
  }
}

/// Convex function with beta-Lipschitz gradient.
class SmoothPart {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  SmoothPart(ValueFn value, GradientFn gradient, double beta)
      : value_(std::move(value)), gradient_(std::move(gradient)), beta_(beta) {
    if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
      throw Error("smooth part: beta must be a positive finite number");
    }
  }

  double value(const Vector& x) const { return value_(x); }

  Vector gradient(const Vector& x) const {
    Vector g = gradient_(x);
    if (g.size() != x.size()) {
      throw DimensionError(static_cast<std::size_t>(x.size()),
                           static_cast<std::size_t>(g.size()));
    }
    return g;
  }

  double beta() const { return beta_; }

 private:
  ValueFn value_;
  GradientFn gradient_;
  double beta_;
};

/// Proper lsc convex function with a closed-form prox. `value` may return +inf.
class NonsmoothPart {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  /// prox(v, step) = argmin_u g(u) + ||u - v||^2 / (2 step)
  using ProxFn = std::function<Vector(const Vector&, double)>;

  NonsmoothPart(ValueFn value, ProxFn prox, bool identically_zero = false)
      : value_(std::move(value)),
        prox_(std::move(prox)),
        identically_zero_(identically_zero) {}

  static NonsmoothPart zero() {
    return NonsmoothPart([](const Vector&) { return 0.0; },
                         [](const Vector& v, double) { return v; }, true);
  }

  double value(const Vector& x) const { return value_(x); }

  Vector prox(const Vector& v, double step) const {
    if (!(step > 0.0)) throw Error("prox: step must be positive");
    return prox_(v, step);
  }

  bool identically_zero() const { return identically_zero_; }

 private:
  ValueFn value_;
  ProxFn prox_;
  bool identically_zero_;
};

/// Known minimizer data. `dist_to_solution_set` is the closed-form distance
/// to argmin F when the family provides one; otherwise callers fall back to
/// ||x - s_ref||, which upper-bounds it.
struct SolutionInfo {
  Vector s_ref;
  double mu = 0.0;
  std::function<double(const Vector&)> dist_to_solution_set;

  bool has_exact_distance() const {
    return static_cast<bool>(dist_to_solution_set);
  }

  double distance(const Vector& x) const {
    return has_exact_distance() ? dist_to_solution_set(x) : (x - s_ref).norm();
  }
};

/// F = f + g on R^dim.
struct CompositeProblem {
  std::string name;
  std::size_t dim = 0;
  SmoothPart f;
  NonsmoothPart g;
  std::optional<SolutionInfo> solution;

  double beta() const { return f.beta(); }
};

/// F(x) = f(x) + g(x). Returns +inf exactly when g(x) is +inf.
inline double eval_F(const CompositeProblem& problem, const Vector& x) {
  require_dim(x, problem.dim);
  const double gx = problem.g.value(x);
  if (gx == kInf) return kInf;
  return problem.f.value(x) + gx;
}

struct LipschitzReport {
  double max_ratio = 0.0;
  std::size_t pairs_used = 0;
  bool pass = false;
};

/// Empirical lower bound on the gradient's Lipschitz constant over the given
/// pairs, compared against the declared beta. Coincident pairs are skipped.
inline LipschitzReport check_lipschitz(
    const CompositeProblem& problem,
    const std::vector<std::pair<Vector, Vector>>& samples) {
  if (samples.empty()) throw Error("check_lipschitz: no sample pairs");
  LipschitzReport report;
  for (const auto& [u, v] : samples) {
    require_dim(u, problem.dim);
    require_dim(v, problem.dim);
    const double dx = (u - v).norm();
    if (dx == 0.0) continue;
    const double dg =
        (problem.f.gradient(u) - problem.f.gradient(v)).norm();
    report.max_ratio = std::max(report.max_ratio, dg / dx);
    ++report.pairs_used;
  }
  if (report.pairs_used == 0) {
    throw Error("check_lipschitz: every sample pair is coincident");
  }
  report.pass = report.max_ratio <= problem.beta() * (1.0 + 1e-8);
  return report;
}

}  // namespace fista_lab

#endif  // FISTA_LAB_CORE_HPP
