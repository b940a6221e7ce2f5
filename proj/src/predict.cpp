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

#include "betadet/predict.hpp"

#include <algorithm>
#include <cmath>

#include "betadet/errors.hpp"

namespace betadet {

void ZoneOfControl::validate() const {
  if (!(w >= 2.0)) throw ZoneError("zone of control: requires w >= 2");
  if (!(gamma > -0.5)) throw ZoneError("zone of control: requires gamma > -1/2");
  if (!(D > 0.0) || !(K1 > 0.0) || !(K2 > 0.0) || !(v >= 1.0)) {
    throw ZoneError("zone of control: requires D, K1, K2 > 0 and v >= 1");
  }
  if (w > 2.0) {
    if (!(gamma <= 1.0 / (w - 2.0))) throw ZoneError("zone of control: gamma > 1/(w-2)");
    if (!(D <= std::pow(1.0 / (4.0 * K2), 1.0 / (w - 2.0)) * (1.0 + 1e-12))) {
      throw ZoneError("zone of control: D > (1/(4 K2))^{1/(w-2)}");
    }
  } else {
    // w == 2: the D condition degenerates; admissible only if 4 K2 <= 1.
    if (4.0 * K2 > 1.0) throw ZoneError("zone of control: w = 2 requires K2 <= 1/4");
  }
}

ZoneOfControl zone_beta_ensemble(double beta, double K1) {
  const double K2 = 8.0 / (beta * beta);
  return {0.0, 1.0 / (4.0 * K2), 1.0, 3.0, K1, K2};
}

ZoneOfControl zone_beta_ensemble_conservative(double beta, double K1) {
  const double K2 = 8.0 / (beta * beta) + 9.0 / beta + 4.0;
  return {0.0, 1.0 / (4.0 * K2), 1.0, 3.0, K1, K2};
}

ZoneOfControl zone_gue(double K1) { return {0.0, 0.25, 1.0, 3.0, K1, 1.0}; }

ZoneOfControl zone_gue_conservative(double K1) { return {0.0, 1.0 / 22.0, 1.0, 3.0, K1, 1.0}; }

const char* regime_name(TailRegime r) {
  switch (r) {
    case TailRegime::CLT: return "clt";
    case TailRegime::MDP_upper: return "mdp_upper";
    case TailRegime::MDP_lower: return "mdp_lower";
    case TailRegime::LLT: return "llt";
  }
  return "?";
}

double clt_tail(double y) { return 0.5 * std::erfc(y / std::sqrt(2.0)); }

TailPrediction mdp_probability(const Expansion& exp, double x) {
  if (exp.degenerate) throw DomainError("mdp_probability: degenerate scale t_n <= 0");
  if (x == 0.0) throw DomainError("mdp_probability: requires x != 0");
  if (!(x > exp.strip_lo) || !(x < exp.strip_hi)) {
    throw DomainError("mdp_probability: x outside the strip");
  }
  const double psi = std::exp(exp.log_psi(Complex{x, 0.0}).real());
  const double leading =
      std::exp(-exp.t_n * x * x / 2.0) / (std::abs(x) * std::sqrt(2.0 * M_PI * exp.t_n)) * psi;
  TailPrediction p;
  p.regime = x > 0.0 ? TailRegime::MDP_upper : TailRegime::MDP_lower;
  p.leading_term = leading;
  p.correction = psi;
  p.probability = std::clamp(leading, 0.0, 1.0);
  return p;
}

double berry_esseen_constant(double D, double v, double K1) {
  if (!(D > 0.0) || !(v >= 1.0) || !(K1 > 0.0)) {
    throw DomainError("berry_esseen_constant: requires D > 0, v >= 1, K1 > 0");
  }
  return 3.0 / (2.0 * M_PI) *
         (std::pow(2.0, v - 1.0) * std::tgamma(v / 2.0) * K1 + 7.0 / D * std::sqrt(M_PI / 2.0));
}

double berry_esseen_bound(const Expansion& exp, const ZoneOfControl& zone) {
  zone.validate();
  if (!(zone.gamma <= (zone.v - 1.0) / 2.0)) {
    throw ZoneError("berry_esseen_bound: requires gamma <= (v-1)/2");
  }
  if (exp.degenerate) throw DomainError("berry_esseen_bound: degenerate scale t_n <= 0");
  return berry_esseen_constant(zone.D, zone.v, zone.K1) *
         std::pow(exp.t_n, -(zone.gamma + 0.5));
}

double llt_window_probability(const Expansion& exp, double a, double b, double delta_exp,
                              double gamma) {
  if (exp.degenerate) throw DomainError("llt_window_probability: degenerate scale t_n <= 0");
  if (!(a < b)) throw DomainError("llt_window_probability: requires a < b");
  if (!(delta_exp >= 0.0) || !(delta_exp < gamma + 0.5)) {
    throw DomainError("llt_window_probability: requires 0 <= delta_exp < gamma + 1/2");
  }
  return (b - a) / (std::sqrt(2.0 * M_PI) * std::pow(exp.t_n, delta_exp));
}

}  // namespace betadet
