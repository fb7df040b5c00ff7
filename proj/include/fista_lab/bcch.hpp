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

#ifndef FISTA_LAB_BCCH_HPP
#define FISTA_LAB_BCCH_HPP

// Scalar-sequence machinery behind the h/g transform
//
//   g_k = h_{k+1} + phi_k (h_{k+1} - h_k),       phi_k > 0
//   h_{k+1} = (1 - lambda_k) g_k + lambda_k h_k,  lambda_k = phi_k / (1 + phi_k)
//   h_n = sum_k w_{n,k} g_k + h_s prod_{j<n} lambda_j,
//   w_{n,k} = (1 - lambda_k) prod_{j=k+1}^{n-1} lambda_j
//
// where sums and products run from the sequence's start index s. Products of
// lambda are accumulated as sums of log(lambda) so they do not underflow.

#include "fista_lab/core.hpp"
#include "fista_lab/diagnostics.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace fista_lab {

using IndexFn = std::function<double(std::int64_t)>;

inline double lambda_of(double phi) {
  if (!(phi > 0.0)) throw Error("bcch: phi_k must be positive");
  return phi / (1.0 + phi);
}

// log(lambda) and log(1 - lambda) without cancellation for large phi.
inline double log_lambda(double phi) { return -std::log1p(1.0 / phi); }
inline double log_one_minus_lambda(double phi) { return -std::log1p(phi); }

inline ScalarSeq materialize(const IndexFn& fn, std::int64_t start,
                             std::size_t count, std::string label = {}) {
  ScalarSeq seq;
  seq.label = std::move(label);
  seq.start = start;
  seq.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    seq.values.push_back(fn(start + static_cast<std::int64_t>(i)));
  }
  return seq;
}

/// g_k for k = h.start .. h.end_index() - 2.
inline ScalarSeq bcch_forward(const ScalarSeq& h, const IndexFn& phi) {
  if (h.size() < 2) throw Error("bcch_forward: need at least two terms of h");
  ScalarSeq g;
  g.label = "g";
  g.start = h.start;
  g.values.reserve(h.size() - 1);
  for (std::size_t i = 0; i + 1 < h.size(); ++i) {
    const double p = phi(h.start + static_cast<std::int64_t>(i));
    if (!(p > 0.0)) throw Error("bcch_forward: phi_k must be positive");
    g.values.push_back(h.values[i + 1] + p * (h.values[i + 1] - h.values[i]));
  }
  return g;
}

/// Streams h_{s}, h_{s+1}, ..., h_{s+count} from the recursion, calling
/// visit(k, h_k) for each. g is queried lazily.
template <class Visitor>
void for_each_reconstructed(const IndexFn& g, const IndexFn& phi,
                            std::int64_t start, double h_start,
                            std::size_t count, Visitor&& visit) {
  double h = h_start;
  visit(start, h);
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t k = start + static_cast<std::int64_t>(i);
    const double lam = lambda_of(phi(k));
    h = (1.0 - lam) * g(k) + lam * h;
    visit(k + 1, h);
  }
}

/// h via the recursion; result has start g.start and length len(g) + 1.
inline ScalarSeq bcch_reconstruct(const ScalarSeq& g, const IndexFn& phi,
                                  double h_start) {
  ScalarSeq h;
  h.label = "h";
  h.start = g.start;
  h.values.reserve(g.size() + 1);
  for_each_reconstructed([&g](std::int64_t k) { return g.at(k); }, phi,
                         g.start, h_start, g.size(),
                         [&h](std::int64_t, double v) { h.values.push_back(v); });
  return h;
}

/// w_{n,k} for k = 0..n-1 given lambda_0..lambda_{n-1}.
inline std::vector<double> bcch_weights_from_lambdas(
    std::span<const double> lambdas) {
  const std::size_t n = lambdas.size();
  if (n == 0) throw Error("bcch_weights: n must be at least 1");
  std::vector<double> w(n);
  double log_tail = 0.0;  // log prod_{j=k+1}^{n-1} lambda_j
  for (std::size_t i = n; i-- > 0;) {
    const double lam = lambdas[i];
    if (!(lam > 0.0 && lam < 1.0)) {
      throw Error("bcch_weights: lambda_k must lie in (0, 1)");
    }
    w[i] = (1.0 - lam) * std::exp(log_tail);
    log_tail += std::log(lam);
  }
  return w;
}

/// w_{n,k} for k = start..start+n-1 with lambda_k from phi.
inline std::vector<double> bcch_weights(const IndexFn& phi, std::size_t n,
                                        std::int64_t start = 0) {
  if (n == 0) throw Error("bcch_weights: n must be at least 1");
  std::vector<double> w(n);
  double log_tail = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double p = phi(start + static_cast<std::int64_t>(i));
    if (!(p > 0.0)) throw Error("bcch_weights: phi_k must be positive");
    w[i] = std::exp(log_one_minus_lambda(p) + log_tail);
    log_tail += log_lambda(p);
  }
  return w;
}

/// |sum_k w_{n,k} - (1 - prod_j lambda_j)|.
inline double weights_telescoping_residual(std::span<const double> lambdas) {
  const std::vector<double> w = bcch_weights_from_lambdas(lambdas);
  double sum = 0.0;
  for (double v : w) sum += v;
  double log_prod = 0.0;
  for (double lam : lambdas) log_prod += std::log(lam);
  return std::abs(sum - (1.0 - std::exp(log_prod)));
}

/// h by the closed weighted form, same layout as bcch_reconstruct. O(n^2).
inline ScalarSeq bcch_weighted_form(const ScalarSeq& g, const IndexFn& phi,
                                    double h_start) {
  const std::size_t n = g.size();
  // prefix[m] = sum_{j<m} log lambda_{start+j}
  std::vector<double> prefix(n + 1, 0.0);
  std::vector<double> log_one_minus(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double p = phi(g.start + static_cast<std::int64_t>(j));
    if (!(p > 0.0)) throw Error("bcch_weighted_form: phi_k must be positive");
    prefix[j + 1] = prefix[j] + log_lambda(p);
    log_one_minus[j] = log_one_minus_lambda(p);
  }
  ScalarSeq h;
  h.label = "h (weighted form)";
  h.start = g.start;
  h.values.reserve(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double w =
          std::exp(log_one_minus[i] + prefix[m] - prefix[i + 1]);
      acc += w * g.values[i];
    }
    h.values.push_back(acc + h_start * std::exp(prefix[m]));
  }
  return h;
}

struct DivergenceWitness {
  std::size_t terms = 0;
  double sum_inv_phi = 0.0;
  double sum_min_one_inv_phi = 0.0;
  double sum_inv_one_plus_phi = 0.0;
  double sum_one_minus_lambda = 0.0;
  double log_prod_lambda = 0.0;
  // 1/(1 + phi_k) >= min(1, 1/phi_k) / 2 at every k.
  bool chain_holds = true;

  double prod_lambda() const { return std::exp(log_prod_lambda); }
};

/// Partial sums over k = start .. start+count-1.
inline DivergenceWitness divergence_witness(const IndexFn& phi,
                                            std::size_t count,
                                            std::int64_t start = 1) {
  if (count == 0) throw Error("divergence_witness: need at least one term");
  DivergenceWitness w;
  w.terms = count;
  for (std::size_t i = 0; i < count; ++i) {
    const double p = phi(start + static_cast<std::int64_t>(i));
    if (!(p > 0.0)) throw Error("divergence_witness: phi_k must be positive");
    const double inv_1p = 1.0 / (1.0 + p);
    const double m = std::min(1.0, 1.0 / p);
    w.sum_inv_phi += 1.0 / p;
    w.sum_min_one_inv_phi += m;
    w.sum_inv_one_plus_phi += inv_1p;
    w.sum_one_minus_lambda += 1.0 - lambda_of(p);
    w.log_prod_lambda += log_lambda(p);
    if (inv_1p < 0.5 * m * (1.0 - 1e-15)) w.chain_holds = false;
  }
  return w;
}

// Scenarios ------------------------------------------------------------------

enum class LimitKind { kFinite, kPlusInfinity, kMinusInfinity };

/// A (phi, h or g) pair with a known averaging behavior or a
/// counterexample to it. Either `h` (explicit formula) or `g` with
/// `h_start` (recursion) is set.
struct BcchScenario {
  std::string name;
  std::string description;
  std::int64_t start = 1;
  IndexFn phi;
  IndexFn h;  // explicit h_k, or empty
  IndexFn g;  // explicit g_k, or empty
  double h_start = 0.0;
  // Limit of g (ell) and of h; they differ when the divergence
  // hypothesis fails.
  LimitKind g_limit_kind = LimitKind::kFinite;
  double g_limit = 0.0;
  double h_limit = 0.0;
  bool g_converges = true;
  bool phi_series_diverges = true;
};

inline double pi_over_sinh_pi() {
  return std::numbers::pi / std::sinh(std::numbers::pi);
}

/// phi_k = k, h_k = ell + (-1)^k / k: h -> ell while g_k = ell + 2 (-1)^{k+1}.
inline BcchScenario scenario_ex42(double ell = 0.5) {
  BcchScenario s;
  s.name = "ex42";
  s.description = "phi_k = k, h_k = ell + (-1)^k/k: g bounded, oscillates by 4";
  s.phi = [](std::int64_t k) { return static_cast<double>(k); };
  s.h = [ell](std::int64_t k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return ell + sign / static_cast<double>(k);
  };
  s.g_limit = s.h_limit = ell;
  s.g_converges = false;
  return s;
}

/// phi_k = k, h_k = ell + (-1)^k / sqrt(k): g unbounded.
inline BcchScenario scenario_ex43(double ell = 0.5) {
  BcchScenario s;
  s.name = "ex43";
  s.description = "phi_k = k, h_k = ell + (-1)^k/sqrt(k): g unbounded";
  s.phi = [](std::int64_t k) { return static_cast<double>(k); };
  s.h = [ell](std::int64_t k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return ell + sign / std::sqrt(static_cast<double>(k));
  };
  s.g_limit = s.h_limit = ell;
  s.g_converges = false;
  return s;
}

/// phi_k = k^2 (summable 1/phi), g = 0, h_1 = 1: h -> pi/sinh(pi) != 0.
inline BcchScenario scenario_ex44_sinh() {
  BcchScenario s;
  s.name = "ex44-sinh";
  s.description = "phi_k = k^2, g = 0, h_1 = 1: h -> pi/sinh(pi), not 0";
  s.phi = [](std::int64_t k) {
    const double kd = static_cast<double>(k);
    return kd * kd;
  };
  s.g = [](std::int64_t) { return 0.0; };
  s.h_start = 1.0;
  s.g_limit = 0.0;
  s.h_limit = pi_over_sinh_pi();
  s.phi_series_diverges = false;
  return s;
}

/// phi_k = k, g_k = k -> +inf, h_1 = 0.
inline BcchScenario scenario_linf_plus() {
  BcchScenario s;
  s.name = "linf-plus";
  s.description = "phi_k = k, g_k = k -> +inf: h exceeds every hurdle";
  s.phi = [](std::int64_t k) { return static_cast<double>(k); };
  s.g = [](std::int64_t k) { return static_cast<double>(k); };
  s.h_start = 0.0;
  s.g_limit_kind = LimitKind::kPlusInfinity;
  s.g_limit = s.h_limit = kInf;
  return s;
}

/// linf-plus applied to (-h_k).
inline BcchScenario scenario_linf_minus() {
  BcchScenario s = scenario_linf_plus();
  const IndexFn g_plus = s.g;
  s.name = "linf-minus";
  s.description = "negated linf-plus: g_k = -k -> -inf, h falls below -hurdle";
  s.g = [g_plus](std::int64_t k) { return -g_plus(k); };
  s.h_start = -s.h_start;
  s.g_limit_kind = LimitKind::kMinusInfinity;
  s.g_limit = s.h_limit = -kInf;
  return s;
}

inline std::vector<std::string> scenario_names() {
  return {"ex42", "ex43", "ex44-sinh", "linf-plus", "linf-minus"};
}

inline BcchScenario scenario_by_name(const std::string& name,
                                     double ell = 0.5) {
  if (name == "ex42") return scenario_ex42(ell);
  if (name == "ex43") return scenario_ex43(ell);
  if (name == "ex44-sinh") return scenario_ex44_sinh();
  if (name == "linf-plus") return scenario_linf_plus();
  if (name == "linf-minus") return scenario_linf_minus();
  throw Error("unknown BCCH scenario '" + name + "'");
}

/// h_s .. h_{s+count} and g_s .. g_{s+count-1} for a scenario.
struct ScenarioData {
  ScalarSeq h;
  ScalarSeq g;
};

inline ScenarioData scenario_data(const BcchScenario& s, std::size_t count) {
  ScenarioData d;
  if (s.h) {
    d.h = materialize(s.h, s.start, count + 1, "h");
    d.g = bcch_forward(d.h, s.phi);
  } else {
    d.g = materialize(s.g, s.start, count, "g");
    d.h = bcch_reconstruct(d.g, s.phi, s.h_start);
  }
  return d;
}

}  // namespace fista_lab

#endif  // FISTA_LAB_BCCH_HPP
