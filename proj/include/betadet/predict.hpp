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

#include "betadet/cgf.hpp"

namespace betadet {

/// Constants (gamma, D, v, w, K1, K2) controlling the Berry-Esseen and
/// local-limit predictions. Admissibility:
///   w >= 2,  -1/2 < gamma <= 1/(w-2),  D <= (1/(4 K2))^{1/(w-2)}.
struct ZoneOfControl {
  double gamma;
  double D;
  double v;
  double w;
  double K1;
  double K2;

  void validate() const;  // throws ZoneError
};

/// Default zone for the beta-ensemble log-determinants: index (1,3),
/// K2 = 8/beta^2, D = 1/(4 K2), gamma = 0. K1 is calibration (the theory
/// fixes it only up to an absolute constant).
ZoneOfControl zone_beta_ensemble(double beta, double K1 = 1.0);
/// Conservative variant with K2 = 8/beta^2 + 9/beta + 4.
ZoneOfControl zone_beta_ensemble_conservative(double beta, double K1 = 1.0);
/// GUE zone: index (1,3), K2 = 1, D = 1/4.
ZoneOfControl zone_gue(double K1 = 1.0);
/// Conservative GUE variant with D = 1/22.
ZoneOfControl zone_gue_conservative(double K1 = 1.0);

enum class TailRegime { CLT, MDP_upper, MDP_lower, LLT };

const char* regime_name(TailRegime r);

struct TailPrediction {
  double probability;    // clamped to [0, 1]
  TailRegime regime;
  double leading_term;   // raw formula value before clamping
  double correction;     // psi(x) factor where applicable, else 1
};

/// Standard normal upper tail P[N(0,1) >= y].
double clt_tail(double y);

/// P[X_n >= t_n x] ~ e^{-t_n x^2/2}/(x sqrt(2 pi t_n)) psi(x) for x > 0
/// inside the strip; mirrored for x < 0.
TailPrediction mdp_probability(const Expansion& exp, double x);

/// C(D, v, K1) = (3/2pi) (2^{v-1} Gamma(v/2) K1 + (7/D) sqrt(pi/2)).
double berry_esseen_constant(double D, double v, double K1);

/// Kolmogorov-distance bound C(D, v, K1) t_n^{-(gamma + 1/2)}.
/// Requires the zone admissibility conditions plus gamma <= (v-1)/2.
double berry_esseen_bound(const Expansion& exp, const ZoneOfControl& zone);

/// Window probability of the local limit theorem at x = 0:
/// P[Y_n in t_n^{-delta}(a, b)] ~ (b-a)/(sqrt(2 pi) t_n^{delta}),
/// for 0 < delta < gamma + 1/2 with the local-limit zone exponent
/// (gamma = 1 for the index-(1,3) zones used here).
double llt_window_probability(const Expansion& exp, double a, double b, double delta_exp,
                              double gamma = 1.0);

}  // namespace betadet
