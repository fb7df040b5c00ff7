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

#include "fista_lab/core.hpp"
#include "fista_lab/problems.hpp"
#include "fista_lab/prox.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace fista_lab {
namespace {

using testing::fd_gradient;
using testing::random_vector;
using testing::vec;

CompositeProblem half_norm_sq(double beta) {
  SmoothPart f([](const Vector& x) { return 0.5 * x.squaredNorm(); },
               [](const Vector& x) -> Vector { return x; }, beta);
  return CompositeProblem{"half-norm-sq", 2, std::move(f), NonsmoothPart::zero(),
                          std::nullopt};
}

TEST(EvalF, FeasibilityPointInBothSets) {
  const auto inst = feasibility_problem();
  EXPECT_EQ(eval_F(inst.problem, vec({0.5, 0.5})), 0.0);
}

TEST(EvalF, OffTheLineIsInfinite) {
  const auto inst = feasibility_problem();
  EXPECT_EQ(eval_F(inst.problem, vec({5.0, 0.0})), kInf);
}

TEST(EvalF, OutsideOrthantOnLine) {
  const auto inst = feasibility_problem();
  EXPECT_NEAR(eval_F(inst.problem, vec({2.0, -1.0})), 0.5, 1e-15);
}

TEST(EvalF, InfiniteExactlyWhenGIsInfiniteNeverNaN) {
  const auto inst = feasibility_problem();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Vector x = random_vector(rng, 2, 1e3);
    if (i % 2 == 0) x = inst.to_domain(x);
    const double F = eval_F(inst.problem, x);
    EXPECT_FALSE(std::isnan(F));
    EXPECT_EQ(F == kInf, inst.problem.g.value(x) == kInf);
  }
}

TEST(EvalF, DimensionMismatchThrows) {
  const auto inst = feasibility_problem();
  EXPECT_THROW(eval_F(inst.problem, vec({1.0, 2.0, 3.0})), DimensionError);
}

TEST(SmoothPart, RejectsBadBeta) {
  auto value = [](const Vector&) { return 0.0; };
  auto grad = [](const Vector& x) -> Vector { return x; };
  EXPECT_THROW(SmoothPart(value, grad, 0.0), Error);
  EXPECT_THROW(SmoothPart(value, grad, -1.0), Error);
  EXPECT_THROW(SmoothPart(value, grad, kInf), Error);
}

TEST(NonsmoothPart, ProxRejectsNonpositiveStep) {
  EXPECT_THROW(NonsmoothPart::zero().prox(vec({1.0}), 0.0), Error);
}

TEST(CheckLipschitz, HalfNormSquaredRatioIsOne) {
  const auto p = half_norm_sq(1.0);
  std::mt19937_64 rng(3);
  std::vector<std::pair<Vector, Vector>> pairs;
  for (int i = 0; i < 20; ++i) pairs.emplace_back(random_vector(rng, 2), random_vector(rng, 2));
  const auto r = check_lipschitz(p, pairs);
  EXPECT_NEAR(r.max_ratio, 1.0, 1e-14);
  EXPECT_TRUE(r.pass);
}

TEST(CheckLipschitz, FeasibilityPairFromFirstIterates) {
  const auto inst = feasibility_problem();
  const auto r = check_lipschitz(inst.problem, {{vec({5.0, 0.0}), vec({3.0, -2.0})}});
  EXPECT_LE(r.max_ratio, 1.0);
  EXPECT_TRUE(r.pass);
}

TEST(CheckLipschitz, MisdeclaredBetaFails) {
  const auto p = half_norm_sq(0.5);
  const auto r = check_lipschitz(p, {{vec({1.0, 0.0}), vec({0.0, 1.0})}});
  EXPECT_NEAR(r.max_ratio, 1.0, 1e-14);
  EXPECT_FALSE(r.pass);
}

TEST(CheckLipschitz, SkipsCoincidentPairs) {
  const auto p = half_norm_sq(1.0);
  EXPECT_THROW(check_lipschitz(p, {{vec({1.0, 1.0}), vec({1.0, 1.0})}}), Error);
  EXPECT_THROW(check_lipschitz(p, {}), Error);
  const auto r = check_lipschitz(
      p, {{vec({1.0, 1.0}), vec({1.0, 1.0})}, {vec({0.0, 0.0}), vec({1.0, 0.0})}});
  EXPECT_EQ(r.pairs_used, 1u);
}

// Every concrete smooth part: central differences agree with the gradient.
TEST(GradientCheck, AllSmoothParts) {
  std::vector<ProblemInstance> insts;
  insts.push_back(feasibility_problem());
  insts.push_back(random_quadratic(6, 1));
  insts.push_back(random_lasso(8, 5, 0.3, 2));
  std::mt19937_64 rng(5);
  for (const auto& inst : insts) {
    const auto& f = inst.problem.f;
    for (int i = 0; i < 50; ++i) {
      Vector x = random_vector(rng, static_cast<Eigen::Index>(inst.problem.dim));
      const Vector g = f.gradient(x);
      const Vector fd = fd_gradient([&f](const Vector& v) { return f.value(v); }, x);
      EXPECT_LE((g - fd).norm(), 1e-5 * std::max(1.0, g.norm())) << inst.problem.name;
    }
  }
}

// Every concrete nonsmooth part: prox(v, gamma) beats random perturbations on
// g(u) + |u - v|^2 / (2 gamma).
TEST(ProxCharacterization, AllNonsmoothParts) {
  std::vector<std::pair<NonsmoothPart, ProblemInstance>> parts;
  const auto feas = feasibility_problem();
  parts.emplace_back(feas.problem.g, feas);
  parts.emplace_back(indicator_of(NonnegativeOrthant(2)),
                     ProblemInstance{feas.problem, [](const Vector& x) {
                                       return project_orthant(x);
                                     }});
  parts.emplace_back(l1_norm(0.7), ProblemInstance{feas.problem, {}});
  parts.emplace_back(NonsmoothPart::zero(), ProblemInstance{feas.problem, {}});

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> log_step(-3.0, 2.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (auto& [g, dom] : parts) {
    for (int i = 0; i < 200; ++i) {
      const Vector v = random_vector(rng, 2);
      const double gamma = std::pow(10.0, log_step(rng));
      const Vector p = g.prox(v, gamma);
      const double best = g.value(p) + (p - v).squaredNorm() / (2.0 * gamma);
      ASSERT_TRUE(std::isfinite(best));
      for (int j = 0; j < 20; ++j) {
        Vector u = p;
        for (Eigen::Index c = 0; c < 2; ++c) u[c] += normal(rng) * std::pow(10.0, -j % 4);
        u = dom.to_domain(u);
        const double other = g.value(u) + (u - v).squaredNorm() / (2.0 * gamma);
        EXPECT_LE(best, other + 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace fista_lab
