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

#ifndef FISTA_LAB_PROBLEMS_HPP
#define FISTA_LAB_PROBLEMS_HPP

// Built-in problem families. Each returns a CompositeProblem whose beta is
// declared in closed form (never estimated from samples).

#include "fista_lab/core.hpp"
#include "fista_lab/prox.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <random>

namespace fista_lab {

/// A problem plus the projection onto dom g used to draw probes with F < inf.
/// An empty `domain_projection` means dom g is the whole space.
struct ProblemInstance {
  CompositeProblem problem;
  std::function<Vector(const Vector&)> domain_projection;

  Vector to_domain(const Vector& x) const {
    return domain_projection ? domain_projection(x) : x;
  }
};

/// Closed-form projection onto the segment [a, b].
inline Vector project_segment(const Vector& a, const Vector& b,
                              const Vector& x) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp((x - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

/// Two-set feasibility problem in the plane: f = 0.5 dist^2(., R_+^2),
/// g = indicator of {v1 + v2 = 1}. beta = 1 and argmin F is the segment
/// between (0, 1) and (1, 0).
inline ProblemInstance feasibility_problem() {
  const NonnegativeOrthant orthant(2);
  const AffineHyperplane line(Vector::Ones(2), 1.0);

  SmoothPart f([orthant](const Vector& x) { return half_sq_dist(orthant, x); },
               [orthant](const Vector& x) {
                 return half_sq_dist_grad(orthant, x);
               },
               1.0);

  SolutionInfo sol;
  sol.s_ref = Vector::Constant(2, 0.5);
  sol.mu = 0.0;
  sol.dist_to_solution_set = [](const Vector& x) {
    require_dim(x, 2);
    const Vector a = Vector::Unit(2, 1);
    const Vector b = Vector::Unit(2, 0);
    return (x - project_segment(a, b, x)).norm();
  };

  ProblemInstance inst{
      CompositeProblem{"feasibility", 2, std::move(f), indicator_of(line),
                       std::move(sol)},
      [line](const Vector& x) { return project_hyperplane(line, x); }};
  return inst;
}

/// Endpoints of the feasibility problem's solution segment.
inline std::vector<Vector> feasibility_segment_endpoints() {
  return {Vector::Unit(2, 1), Vector::Unit(2, 0)};
}

/// f = 0.5 (x - c)^T A (x - c), g = 0, with A symmetric positive definite.
/// beta is the largest eigenvalue of A; argmin is {c} and mu = 0.
inline ProblemInstance quadratic_problem(const Eigen::MatrixXd& a,
                                         const Vector& center,
                                         std::string name = "quadratic") {
  if (a.rows() != a.cols() || a.rows() != center.size() || a.rows() == 0) {
    throw Error("quadratic: matrix and center dimensions disagree");
  }
  if (!a.isApprox(a.transpose(), 1e-12)) {
    throw Error("quadratic: matrix must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0)) throw Error("quadratic: matrix must be positive definite");

  const auto dim = static_cast<std::size_t>(a.rows());
  SmoothPart f(
      [a, center](const Vector& x) {
        const Vector d = x - center;
        return 0.5 * d.dot(a * d);
      },
      [a, center](const Vector& x) -> Vector { return a * (x - center); }, hi);

  SolutionInfo sol;
  sol.s_ref = center;
  sol.mu = 0.0;
  sol.dist_to_solution_set = [center](const Vector& x) {
    return (x - center).norm();
  };
  return ProblemInstance{
      CompositeProblem{std::move(name), dim, std::move(f), NonsmoothPart::zero(),
                       std::move(sol)},
      {}};
}

/// Seeded random SPD quadratic with eigenvalues spread over [1/cond, 1] * scale.
inline ProblemInstance random_quadratic(std::size_t dim, std::uint64_t seed,
                                        double cond = 100.0,
                                        double scale = 1.0) {
  if (dim == 0) throw Error("random_quadratic: dimension must be positive");
  if (!(cond >= 1.0) || !(scale > 0.0)) {
    throw Error("random_quadratic: need cond >= 1 and scale > 0");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(dim);

  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  const Eigen::MatrixXd q = qr.householderQ();

  Vector eigs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    eigs[i] = scale * std::pow(cond, -frac);
  }
  Eigen::MatrixXd a = q * eigs.asDiagonal() * q.transpose();
  a = 0.5 * (a + a.transpose());

  Vector center(n);
  for (Eigen::Index i = 0; i < n; ++i) center[i] = normal(rng);
  return quadratic_problem(a, center,
                           "random-quadratic-" + std::to_string(seed));
}

/// f = 0.5 ||A x - b||^2, g = lambda ||x||_1. No closed-form minimizer, so
/// solution info is absent.
inline ProblemInstance lasso_problem(const Eigen::MatrixXd& a, const Vector& b,
                                     double lambda) {
  if (a.rows() != b.size() || a.cols() == 0) {
    throw Error("lasso: matrix and data dimensions disagree");
  }
  const Eigen::MatrixXd ata = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ata);
  const double beta = eig.eigenvalues().maxCoeff();
  if (!(beta > 0.0)) throw Error("lasso: matrix must be nonzero");
  SmoothPart f(
      [a, b](const Vector& x) { return 0.5 * (a * x - b).squaredNorm(); },
      [a, b](const Vector& x) -> Vector { return a.transpose() * (a * x - b); },
      beta);
  return ProblemInstance{
      CompositeProblem{"lasso", static_cast<std::size_t>(a.cols()),
                       std::move(f), l1_norm(lambda), std::nullopt},
      {}};
}

inline ProblemInstance random_lasso(std::size_t rows, std::size_t cols,
                                    double lambda, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = normal(rng);
  Vector b(a.rows());
  for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = normal(rng);
  return lasso_problem(a, b, lambda);
}

}  // namespace fista_lab

#endif  // FISTA_LAB_PROBLEMS_HPP
