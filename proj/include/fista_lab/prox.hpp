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

#ifndef FISTA_LAB_PROX_HPP
#define FISTA_LAB_PROX_HPP

#include "fista_lab/core.hpp"

#include <algorithm>
#include <cmath>

namespace fista_lab {

/// The set {x : <normal, x> = offset}.
class AffineHyperplane {
 public:
  AffineHyperplane(Vector normal, double offset)
      : normal_(std::move(normal)), offset_(offset) {
    if (normal_.size() == 0 || !all_finite(normal_) ||
        !(normal_.squaredNorm() > 0.0)) {
      throw Error("hyperplane: normal must be a nonzero finite vector");
    }
  }

  const Vector& normal() const { return normal_; }
  double offset() const { return offset_; }
  std::size_t dim() const { return static_cast<std::size_t>(normal_.size()); }

  /// Signed violation <normal, x> - offset.
  double residual(const Vector& x) const { return normal_.dot(x) - offset_; }

 private:
  Vector normal_;
  double offset_;
};

/// R_+^n.
class NonnegativeOrthant {
 public:
  explicit NonnegativeOrthant(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) throw Error("orthant: dimension must be at least 1");
  }
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
};

inline Vector project_orthant(const Vector& x) { return x.cwiseMax(0.0); }

inline Vector project_hyperplane(const AffineHyperplane& h, const Vector& x) {
  require_dim(x, h.dim());
  return x - (h.residual(x) / h.normal().squaredNorm()) * h.normal();
}

// Prox of an indicator is the projection for every step > 0.
inline Vector prox_indicator(const NonnegativeOrthant& set, const Vector& v,
                             double step) {
  if (!(step > 0.0)) throw Error("prox_indicator: step must be positive");
  require_dim(v, set.dim());
  return project_orthant(v);
}

inline Vector prox_indicator(const AffineHyperplane& h, const Vector& v,
                             double step) {
  if (!(step > 0.0)) throw Error("prox_indicator: step must be positive");
  return project_hyperplane(h, v);
}

/// Prox of lambda_step * ||.||_1.
inline Vector soft_threshold(const Vector& v, double lambda_step) {
  if (!(lambda_step >= 0.0)) {
    throw Error("soft_threshold: threshold must be nonnegative");
  }
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::max(std::abs(v[i]) - lambda_step, 0.0);
    out[i] = v[i] < 0.0 ? -mag : mag;
  }
  return out;
}

/// Gradient of 0.5 * dist^2(., R_+^n), i.e. x - P(x). Globally 1-Lipschitz.
inline Vector half_sq_dist_grad(const NonnegativeOrthant& set, const Vector& x) {
  require_dim(x, set.dim());
  return x - project_orthant(x);
}

inline double half_sq_dist(const NonnegativeOrthant& set, const Vector& x) {
  return 0.5 * half_sq_dist_grad(set, x).squaredNorm();
}

// Indicator values use an absolute feasibility slack; projections land on
// the set only up to roundoff.
inline constexpr double kFeasibilityTol = 1e-9;

inline double indicator_value(const NonnegativeOrthant& set, const Vector& x) {
  require_dim(x, set.dim());
  return x.minCoeff() >= -kFeasibilityTol ? 0.0 : kInf;
}

inline double indicator_value(const AffineHyperplane& h, const Vector& x) {
  require_dim(x, h.dim());
  const double scale = std::max(1.0, h.normal().norm() * x.norm());
  return std::abs(h.residual(x)) <= kFeasibilityTol * scale ? 0.0 : kInf;
}

inline NonsmoothPart indicator_of(const AffineHyperplane& h) {
  return NonsmoothPart([h](const Vector& x) { return indicator_value(h, x); },
                       [h](const Vector& v, double step) {
                         return prox_indicator(h, v, step);
                       });
}

inline NonsmoothPart indicator_of(const NonnegativeOrthant& set) {
  return NonsmoothPart(
      [set](const Vector& x) { return indicator_value(set, x); },
      [set](const Vector& v, double step) {
        return prox_indicator(set, v, step);
      });
}

/// lambda * ||x||_1 with prox soft_threshold(v, lambda * step).
inline NonsmoothPart l1_norm(double lambda) {
  if (!(lambda >= 0.0)) throw Error("l1_norm: weight must be nonnegative");
  return NonsmoothPart(
      [lambda](const Vector& x) { return lambda * x.lpNorm<1>(); },
      [lambda](const Vector& v, double step) {
        return soft_threshold(v, lambda * step);
      });
}

}  // namespace fista_lab

#endif  // FISTA_LAB_PROX_HPP
