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

#include "fista_lab/checks.hpp"
#include "fista_lab/problems.hpp"
#include "fista_lab/solver.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

namespace fista_lab {
namespace {

using testing::vec;

void expect_vec(const Vector& got, const Vector& want, double tol = 1e-12) {
  EXPECT_LE((got - want).norm(), tol) << "got " << got.transpose() << ", want "
                                       << want.transpose();
}

// Reference FISTA on the feasibility problem written with plain arrays:
// gradient of 0.5 dist^2 to R_+^2 is min(x, 0), projection onto x + y = 1
// subtracts the mean excess.
std::vector<std::array<double, 2>> reference_fista(std::size_t n) {
  std::vector<std::array<double, 2>> xs = {{5.0, 0.0}};
  std::array<double, 2> x = xs[0], y = xs[0];
  double t = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::array<double, 2> u = {y[0] - std::min(y[0], 0.0), y[1] - std::min(y[1], 0.0)};
    const double excess = 0.5 * (u[0] + u[1] - 1.0);
    const std::array<double, 2> xn = {u[0] - excess, u[1] - excess};
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double m = (t - 1.0) / tn;
    y = {xn[0] + m * (xn[0] - x[0]), xn[1] + m * (xn[1] - x[1])};
    x = xn;
    t = tn;
    xs.push_back(x);
  }
  return xs;
}

CompositeProblem half_norm_sq() {
  SmoothPart f([](const Vector& x) { return 0.5 * x.squaredNorm(); },
               [](const Vector& x) -> Vector { return x; }, 1.0);
  return CompositeProblem{"half-norm-sq", 3, std::move(f), NonsmoothPart::zero(),
                          std::nullopt};
}

TEST(TOperator, FeasibilityExamples) {
  const auto inst = feasibility_problem();
  expect_vec(t_operator(inst.problem, vec({5.0, 0.0})), vec({3.0, -2.0}));
  expect_vec(t_operator(inst.problem, vec({3.0, -2.0})), vec({2.0, -1.0}));
}

TEST(TOperator, ExactGradientStepMinimizes) {
  const auto p = half_norm_sq();
  expect_vec(t_operator(p, vec({4.0, -7.0, 1e3})), Vector::Zero(3), 0.0);
}

TEST(PgmRun, FirstIterates) {
  const auto inst = feasibility_problem();
  const Trace tr = pgm_run(inst.problem, vec({5.0, 0.0}), 4);
  ASSERT_EQ(tr.records.size(), 5u);
  expect_vec(tr.records[1].x, vec({3.0, -2.0}));
  expect_vec(tr.records[2].x, vec({2.0, -1.0}));
  expect_vec(tr.records[3].x, vec({1.5, -0.5}));
  expect_vec(tr.records[4].x, vec({1.25, -0.25}));
  for (const auto& r : tr.records) {
    EXPECT_EQ(r.t, 1.0);
    EXPECT_EQ(r.y, r.x);
  }
  EXPECT_EQ(tr.method, "pgm");
}

TEST(PgmRun, ReachesOneZeroWithinForty) {
  const auto inst = feasibility_problem();
  const Trace tr = pgm_run(inst.problem, vec({5.0, 0.0}), 40);
  EXPECT_LE((tr.last().x - vec({1.0, 0.0})).norm(), 1e-6);
  EXPECT_TRUE(check_rate_bound(tr, inst.problem).pass);
}

TEST(FistaRun, FirstIteratesByHand) {
  const auto inst = feasibility_problem();
  Schedule bt = Schedule::beck_teboulle();
  const Trace tr = fista_run(inst.problem, vec({5.0, 0.0}), bt, 3);
  expect_vec(tr.records[1].x, vec({3.0, -2.0}));
  expect_vec(tr.records[1].y, tr.records[1].x);  // (t_0 - 1)/t_1 = 0
  expect_vec(tr.records[2].x, vec({2.0, -1.0}));
  expect_vec(tr.records[3].x, vec({1.35912324, -0.35912324}), 1e-8);
  EXPECT_EQ(tr.schedule_id, "bt");
  EXPECT_EQ(tr.method, "fista");
}

TEST(FistaRun, MatchesReferenceImplementation) {
  const auto inst = feasibility_problem();
  Schedule bt = Schedule::beck_teboulle();
  const Trace tr = fista_run(inst.problem, vec({5.0, 0.0}), bt, 2000);
  const auto ref = reference_fista(2000);
  for (std::size_t k = 0; k < ref.size(); ++k) {
    expect_vec(tr.records[k].x, vec({ref[k][0], ref[k][1]}), 1e-10);
  }
}

TEST(FistaRun, FeasibilityLimit) {
  const auto inst = feasibility_problem();
  Schedule bt = Schedule::beck_teboulle();
  RunOptions opts;
  opts.keep_vectors_every = 1000;
  const Trace tr = fista_run(inst.problem, vec({5.0, 0.0}), bt, 100000, opts);
  EXPECT_LE((tr.last().x - vec({0.4829, 0.5171})).norm(), 1e-3);
  EXPECT_LE(tr.last().gap_xy, 1e-4);
}

TEST(FistaRun, RowsCarryObjectiveAndLyapunov) {
  const auto inst = feasibility_problem();
  Schedule bt = Schedule::beck_teboulle();
  RunOptions opts;
  opts.s_refs = {vec({0.0, 1.0}), vec({1.0, 0.0})};
  const Trace tr = fista_run(inst.problem, vec({5.0, 0.0}), bt, 50, opts);
  // x_0 is off the line: delta_0 = +inf and no xi at k = 0.
  ASSERT_TRUE(tr.records[0].delta);
  EXPECT_EQ(*tr.records[0].delta, kInf);
  EXPECT_TRUE(tr.records[0].xi.empty());
  for (std::size_t k = 1; k < tr.records.size(); ++k) {
    const auto& r = tr.records[k];
    ASSERT_EQ(r.xi.size(), 2u);
    const double t_prev = tr.records[k - 1].t;
    const double expect =
        t_prev * t_prev * *r.delta + 0.5 * (r.z - opts.s_refs[0]).squaredNorm();
    EXPECT_NEAR(r.xi[0], expect, 1e-12 * std::max(1.0, expect));
    EXPECT_LE(r.res_zdef, 1e-12);
    EXPECT_LE(r.res_zid, 1e-12);
    EXPECT_LE(r.res_convex, 1e-12);
    // Row 1 probes with x_0, which lies outside dom g.
    if (k == 1) {
      EXPECT_TRUE(std::isnan(r.res_suffdec));
    } else {
      EXPECT_GE(r.res_suffdec, -1e-12);
    }
  }
}

TEST(FistaRun, RejectsInvalidSchedule) {
  const auto inst = feasibility_problem();
  Schedule ones = Schedule::explicit_values({1.0, 1.0, 1.0, 1.0});
  try {
    fista_run(inst.problem, vec({5.0, 0.0}), ones, 3);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("k = 1"), std::string::npos) << e.what();
  }
  Schedule short_list = Schedule::explicit_values({1.0, 1.5});
  EXPECT_THROW(fista_run(inst.problem, vec({5.0, 0.0}), short_list, 3), Error);
}

TEST(FistaRun, LinearScheduleAlsoConverges) {
  const auto inst = feasibility_problem();
  Schedule lin = Schedule::linear();
  const Trace tr = fista_run(inst.problem, vec({5.0, 0.0}), lin, 20000);
  EXPECT_TRUE(check_rate_bound(tr, inst.problem).pass);
  EXPECT_LE(*tr.last().delta, 1e-6);
}

TEST(FistaRun, NonFiniteIterateAbortsAndKeepsRow) {
  // beta declared far too small: the gradient step overshoots and diverges.
  SmoothPart f([](const Vector& x) { return 5.0 * x.squaredNorm(); },
               [](const Vector& x) -> Vector { return 10.0 * x; }, 0.01);
  const CompositeProblem p{"blowup", 2, std::move(f), NonsmoothPart::zero(),
                           std::nullopt};
  Schedule bt = Schedule::beck_teboulle();
  const Trace tr = fista_run(p, vec({1.0, 1.0}), bt, 1000);
  ASSERT_TRUE(tr.aborted());
  EXPECT_EQ(tr.records.size(), *tr.aborted_at + 1);
  EXPECT_FALSE(all_finite(tr.last().x));
  const Trace tp = pgm_run(p, vec({1.0, 1.0}), 1000);
  EXPECT_TRUE(tp.aborted());
}

TEST(FistaRun, KeepVectorsEvery) {
  const auto inst = feasibility_problem();
  Schedule bt = Schedule::beck_teboulle();
  RunOptions opts;
  opts.keep_vectors_every = 10;
  const Trace tr = fista_run(inst.problem, vec({5.0, 0.0}), bt, 25, opts);
  EXPECT_TRUE(tr.records[0].has_vectors());
  EXPECT_FALSE(tr.records[5].has_vectors());
  EXPECT_TRUE(tr.records[20].has_vectors());
  EXPECT_TRUE(tr.records[25].has_vectors());
  opts.keep_vectors_every = 0;
  EXPECT_THROW(fista_run(inst.problem, vec({5.0, 0.0}), bt, 5, opts), Error);
}

TEST(FistaRun, ZeroIterationsRejected) {
  const auto inst = feasibility_problem();
  Schedule bt = Schedule::beck_teboulle();
  EXPECT_THROW(fista_run(inst.problem, vec({5.0, 0.0}), bt, 0), Error);
  EXPECT_THROW(pgm_run(inst.problem, vec({5.0, 0.0}), 0), Error);
}

TEST(NesterovRun, DiagonalQuadraticRateBound) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 0.1;
  const auto inst = quadratic_problem(a, Vector::Zero(2));
  Schedule bt = Schedule::beck_teboulle();
  const Vector x0 = vec({3.0, -4.0});
  const Trace tr = nesterov_run(inst.problem, x0, bt, 1000);
  EXPECT_EQ(tr.method, "nesterov");
  for (std::size_t k = 1; k < tr.records.size(); ++k) {
    const double bound = 2.0 * x0.squaredNorm() / ((k + 1.0) * (k + 1.0));
    EXPECT_LE(*tr.records[k].delta, bound) << "k = " << k;
  }
}

TEST(NesterovRun, RejectsNonzeroG) {
  const auto inst = feasibility_problem();
  Schedule bt = Schedule::beck_teboulle();
  EXPECT_THROW(nesterov_run(inst.problem, vec({5.0, 0.0}), bt, 5), Error);
}

TEST(SufficientDecrease, SlackDefinition) {
  const auto inst = feasibility_problem();
  // Off-domain probe: undefined.
  EXPECT_TRUE(std::isnan(sufficient_decrease_slack(
      inst.problem, vec({5.0, 0.0}), vec({3.0, -2.0}), vec({2.0, -1.0}))));
  // x = s in S, y = (3, -2), y+ = (2, -1): 0 - 0.5 - 0.5(||s - y+||^2 - ||s - y||^2).
  const Vector s = vec({0.5, 0.5});
  const double a = 0.5 * (s - vec({2.0, -1.0})).squaredNorm();
  const double b = 0.5 * (s - vec({3.0, -2.0})).squaredNorm();
  const double raw = 0.0 - 0.5 - (a - b);
  EXPECT_NEAR(sufficient_decrease_slack(inst.problem, s, vec({3.0, -2.0}),
                                        vec({2.0, -1.0})),
              raw / std::max({1.0, 0.5, a, b}), 1e-14);
  EXPECT_GE(raw, 0.0);
}

}  // namespace
}  // namespace fista_lab
