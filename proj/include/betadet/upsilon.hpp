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

#include <optional>
#include <utility>

#include "betadet/quadrature.hpp"

namespace betadet {

/// Repulsion parameter beta > 0, with the exact rational form of beta/2
/// attached when one is known. The closed-form evaluators need (p, q) with
/// beta/2 = p/q; the quadrature route works for any beta.
struct BetaParam {
  double value;
  std::optional<std::pair<long, long>> half_ratio;  // beta/2 = p/q, reduced

  explicit BetaParam(double beta);      // detects small rationals (q <= 64)
  BetaParam(long p, long q);            // beta = 2p/q exactly
  double half() const { return 0.5 * value; }
};

/// Upsilon(z): the ensemble-independent building block of the limiting
/// functions,
///   (b/2) log G(2z/b + 1) - (z - 1/2) log Gamma(2z/b + 1)
///   + int_0^inf phi(s) (e^{-sz} - 1)/(e^{s b/2} - 1) ds + z^2/b + z/2,
/// analytic on Re(z) > -b/2. Direct quadrature evaluation.
Complex upsilon_quadrature(Complex z, const BetaParam& beta, const QuadratureConfig& cfg = {});

/// Closed form for beta/2 = halfbeta, a positive integer.
Complex upsilon_closed_integer(Complex z, long halfbeta);

/// Closed form for beta/2 = 1/q.
Complex upsilon_closed_inv_integer(Complex z, long q);

/// Closed form for beta/2 = p/q.
Complex upsilon_closed_rational(Complex z, long p, long q);

/// Upsilon_delta(z) = Upsilon(z + delta) - Upsilon(delta).
Complex upsilon_shifted(Complex z, Complex delta, const BetaParam& beta,
                        const QuadratureConfig& cfg = {});

/// GUE variant: log( Gamma(1/2)/Gamma((z+1)/2) * G(1/2)^2/G((z+1)/2)^2 ),
/// analytic on Re(z) > -1.
Complex upsilon_gue(Complex z);

/// Closed form when the rational form of beta/2 is available, quadrature
/// otherwise.
Complex upsilon_auto(Complex z, const BetaParam& beta);

}  // namespace betadet
