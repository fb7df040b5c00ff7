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

#ifndef FISTA_LAB_IO_HPP
#define FISTA_LAB_IO_HPP

// Trace and report serialization.
//
// Trace CSV columns:
//   k,t,Fx,delta,xi_s0,...,xi_s{m-1},res_zdef,res_zid,res_convex,res_suffdec,
//   gap_xy,norm_x,norm_z
// Reals use 17 significant digits; undefined cells are empty and +inf is
// written as "inf".

#include "fista_lab/checks.hpp"
#include "fista_lab/solver.hpp"

#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

namespace fista_lab {

inline std::string format_real(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string format_real(const std::optional<double>& v) {
  return v ? format_real(*v) : std::string();
}

inline std::string trace_csv_header(std::size_t num_refs) {
  std::string h = "k,t,Fx,delta";
  for (std::size_t i = 0; i < num_refs; ++i) h += ",xi_s" + std::to_string(i);
  h += ",res_zdef,res_zid,res_convex,res_suffdec,gap_xy,norm_x,norm_z";
  return h;
}

inline void write_trace_csv(const Trace& trace, std::ostream& os) {
  const std::size_t m = trace.s_refs.size();
  os << trace_csv_header(m) << '\n';
  for (const IterateRecord& r : trace.records) {
    os << r.k << ',' << format_real(r.t) << ',' << format_real(r.F_x) << ','
       << format_real(r.delta);
    for (std::size_t i = 0; i < m; ++i) {
      os << ',' << (i < r.xi.size() ? format_real(r.xi[i]) : std::string());
    }
    os << ',' << format_real(r.res_zdef) << ',' << format_real(r.res_zid) << ','
       << format_real(r.res_convex) << ',' << format_real(r.res_suffdec) << ','
       << format_real(r.gap_xy) << ',' << format_real(r.norm_x) << ','
       << format_real(r.norm_z) << '\n';
  }
}

inline nlohmann::json to_json(const Vector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

/// Full vectors for every `every`-th row plus the last row.
inline nlohmann::json snapshots_json(const Trace& trace, std::size_t every) {
  if (every == 0) throw Error("snapshots: every must be at least 1");
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const IterateRecord& r = trace.records[i];
    const bool last = i + 1 == trace.records.size();
    if (r.k % every != 0 && !last) continue;
    if (!r.has_vectors()) continue;
    rows.push_back({{"k", r.k},
                    {"t", r.t},
                    {"x", to_json(r.x)},
                    {"y", to_json(r.y)},
                    {"z", to_json(r.z)}});
  }
  return {{"problem", trace.problem_id},
          {"method", trace.method},
          {"schedule", trace.schedule_id},
          {"snapshot_every", every},
          {"rows", rows}};
}

/// {claim, pass, residual_or_oscillation, window, tol[, note]}
inline nlohmann::json to_json(const CheckResult& c) {
  nlohmann::json j = {{"claim", c.claim},
                      {"pass", c.pass},
                      {"residual_or_oscillation",
                       std::isfinite(c.value) ? nlohmann::json(c.value)
                                              : nlohmann::json(format_real(c.value))},
                      {"window", c.window ? nlohmann::json(*c.window)
                                          : nlohmann::json(nullptr)},
                      {"tol", c.tol}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << body;
}

}  // namespace fista_lab

#endif  // FISTA_LAB_IO_HPP
