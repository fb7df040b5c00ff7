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

#include "fista_lab/io.hpp"
#include "fista_lab/problems.hpp"

#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

namespace fista_lab {
namespace {

using testing::vec;

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

Trace small_trace() {
  const auto inst = feasibility_problem();
  Schedule bt = Schedule::beck_teboulle();
  RunOptions opts;
  opts.s_refs = {vec({0.0, 1.0}), vec({1.0, 0.0})};
  return fista_run(inst.problem, vec({5.0, 0.0}), bt, 30, opts);
}

TEST(FormatReal, RoundTripsAndSpecials) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.4829143511172497}) {
    EXPECT_EQ(std::strtod(format_real(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(format_real(3.0), "3");
  EXPECT_EQ(format_real(kInf), "inf");
  EXPECT_EQ(format_real(-kInf), "-inf");
  EXPECT_EQ(format_real(kNaN), "");
  EXPECT_EQ(format_real(std::optional<double>{}), "");
}

TEST(TraceCsv, HeaderAndRows) {
  EXPECT_EQ(trace_csv_header(2),
            "k,t,Fx,delta,xi_s0,xi_s1,res_zdef,res_zid,res_convex,res_suffdec,"
            "gap_xy,norm_x,norm_z");
  const Trace tr = small_trace();
  std::ostringstream os;
  write_trace_csv(tr, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  const auto header = split(line, ',');
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    const auto cells = split(line, ',');
    ASSERT_EQ(cells.size(), header.size()) << line;
    EXPECT_EQ(std::stoul(cells[0]), rows);
    if (rows == 0) {
      EXPECT_EQ(cells[2], "inf");  // F(x_0) off the line
      EXPECT_EQ(cells[4], "");     // xi undefined at k = 0
    } else {
      EXPECT_EQ(std::strtod(cells[1].c_str(), nullptr), tr.records[rows].t);
      EXPECT_EQ(std::strtod(cells[4].c_str(), nullptr), tr.records[rows].xi[0]);
    }
    ++rows;
  }
  EXPECT_EQ(rows, tr.records.size());
}

TEST(TraceCsv, Deterministic) {
  std::ostringstream a;
  std::ostringstream b;
  write_trace_csv(small_trace(), a);
  write_trace_csv(small_trace(), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Snapshots, EveryNthPlusLast) {
  const auto j = snapshots_json(small_trace(), 7);
  EXPECT_EQ(j["snapshot_every"], 7);
  std::vector<int> ks;
  for (const auto& row : j["rows"]) ks.push_back(row["k"].get<int>());
  EXPECT_EQ(ks, (std::vector<int>{0, 7, 14, 21, 28, 30}));
  EXPECT_EQ(j["rows"][1]["x"].size(), 2u);
  EXPECT_THROW(snapshots_json(small_trace(), 0), Error);
}

TEST(CheckJson, Fields) {
  CheckResult c;
  c.claim = "demo";
  c.pass = true;
  c.value = 0.25;
  c.tol = 1e-3;
  c.window = 100;
  const auto j = to_json(c);
  EXPECT_EQ(j["claim"], "demo");
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["residual_or_oscillation"], 0.25);
  EXPECT_EQ(j["window"], 100);
  EXPECT_EQ(j["tol"], 1e-3);
  EXPECT_FALSE(j.contains("note"));
  c.window.reset();
  c.value = kInf;
  const auto k = to_json(c);
  EXPECT_TRUE(k["window"].is_null());
  EXPECT_EQ(k["residual_or_oscillation"], "inf");
}

}  // namespace
}  // namespace fista_lab
