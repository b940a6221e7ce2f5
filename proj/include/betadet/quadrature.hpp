// Copyright 2026 The betadet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <vector>

#include "betadet/errors.hpp"

namespace betadet {

using Complex = std::complex<double>;

struct QuadratureConfig {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  int max_subdivisions = 4000;
  // Integrand magnitude below which the remaining exponential tail is cut.
  double truncation_threshold = 1e-16;
};

namespace detail {

// Gauss-Kronrod 7-15 pair. Nodes/weights from QUADPACK (dqk15).
inline constexpr double kGk15Nodes[8] = {
    0.000000000000000000000000000000000e+00, 2.077849550078984676006894037732449e-01,
    4.058451513773971669066064120769615e-01, 5.860872354676911302941448382587296e-01,
    7.415311855993944398638647732807884e-01, 8.648644233597690727897127886409262e-01,
    9.491079123427585245261896840478513e-01, 9.914553711208126392068546975263285e-01};
inline constexpr double kGk15WeightsK[8] = {
    2.094821410847278280129991748917143e-01, 2.044329400752988924141619992346491e-01,
    1.903505780647854099132564024210137e-01, 1.690047266392679028265834265985503e-01,
    1.406532597155259187451895905102379e-01, 1.047900103222501838398763225415180e-01,
    6.309209262997855329070066318920429e-02, 2.293532201052922496373200805896959e-02};
inline constexpr double kGk15WeightsG[4] = {
    4.179591836734693877551020408163265e-01, 3.818300505051189449503697754889751e-01,
    2.797053914892766679014677714237796e-01, 1.294849661688696932706114326790820e-01};

template <class F>
inline Complex gk15(const F& f, double a, double b, double* err) {
  const double mid = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const Complex f0 = f(mid);
  Complex k = kGk15WeightsK[0] * f0;
  Complex g = kGk15WeightsG[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = h * kGk15Nodes[i];
    const Complex fi = f(mid + dx) + f(mid - dx);
    k += kGk15WeightsK[i] * fi;
    if (i % 2 == 0) g += kGk15WeightsG[i / 2] * fi;
  }
  k *= h;
  g *= h;
  const double diff = std::abs(k - g);
  // QUADPACK-style sharpened estimate.
  *err = diff * std::min(1.0, std::pow(200.0 * diff / std::max(std::abs(k), 1e-300), 1.5));
  if (!(*err > 0)) *err = diff;
  return k;
}

struct Panel {
  double a, b, err;
  Complex val;
  bool operator<(const Panel& o) const { return err < o.err; }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of a complex-valued integrand on [a, b].
/// Refines the worst panel until the summed error estimate meets
/// max(abs_tol, rel_tol*|I|) or the panel budget is exhausted.
template <class F>
Complex integrate(const F& f, double a, double b, const QuadratureConfig& cfg = {},
                  double* err_out = nullptr) {
  if (a == b) {
    if (err_out) *err_out = 0.0;
    return Complex{0.0, 0.0};
  }
  std::priority_queue<detail::Panel> panels;
  double err0;
  Complex v0 = detail::gk15(f, a, b, &err0);
  panels.push({a, b, err0, v0});
  Complex total = v0;
  double total_err = err0;
  int used = 1;
  while (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)) &&
         used < cfg.max_subdivisions) {
    detail::Panel w = panels.top();
    panels.pop();
    const double m = 0.5 * (w.a + w.b);
    if (m <= w.a || m >= w.b) {  // interval at rounding resolution
      panels.push({w.a, w.b, 0.0, w.val});
      continue;
    }
    double e1, e2;
    const Complex v1 = detail::gk15(f, w.a, m, &e1);
    const Complex v2 = detail::gk15(f, m, w.b, &e2);
    total += v1 + v2 - w.val;
    total_err += e1 + e2 - w.err;
    panels.push({w.a, m, e1, v1});
    panels.push({m, w.b, e2, v2});
    used += 2;
  }
  if (total_err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)) * 10.0) {
    throw QuadratureError("quadrature tolerance not met within max_subdivisions");
  }
  if (err_out) *err_out = total_err;
  return total;
}

/// Integral over [a, inf) of an exponentially decaying integrand. Marches in
/// doubling segments and truncates once a segment contributes below both the
/// tolerance share and the truncation threshold.
template <class F>
Complex integrate_to_inf(const F& f, double a, const QuadratureConfig& cfg = {}) {
  Complex total{0.0, 0.0};
  double left = a;
  double width = 1.0;
  QuadratureConfig seg_cfg = cfg;
  seg_cfg.abs_tol = cfg.abs_tol / 8.0;
  int segments = 0;
  while (true) {
    const double right = left + width;
    const Complex part = integrate(f, left, right, seg_cfg);
    total += part;
    const double edge = std::abs(f(right));
    if (std::abs(part) < std::max(cfg.abs_tol / 4.0, cfg.truncation_threshold) &&
        edge < cfg.truncation_threshold) {
      return total;
    }
    left = right;
    width = std::min(2.0 * width, 64.0);
    if (++segments > 200) {
      throw QuadratureError("semi-infinite integrand does not decay within segment budget");
    }
  }
}

}  // namespace betadet
