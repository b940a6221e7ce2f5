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

#include <complex>
#include <functional>

#include "betadet/quadrature.hpp"

namespace betadet::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kLog2Pi = 1.8378770664093454836;
// zeta'(-1), used by the large-argument Barnes G expansion.
inline constexpr double kZetaPrimeMinusOne = -0.16542114370045092921;

/// Binet kernel phi(s) = (1/2 - 1/s + 1/(e^s - 1))/s, continuous at 0 with
/// phi(0) = 1/12. Total on s >= 0; bounded by 1/12.
double binet_phi(double s);

/// Principal-branch log Gamma(z) for Re(z) > 0. Throws DomainError otherwise.
Complex log_gamma(Complex z);

/// Digamma Psi(z) for Re(z) > 0. Throws DomainError otherwise.
Complex digamma(Complex z);

/// log G(1+z) for the Barnes G-function, Re(z) > -1. For Re(z) in (-1, 0]
/// one step of G(w+1) = G(w)Gamma(w) reduces to the Re > 0 region.
Complex log_barnes_g(Complex z);

/// log Gamma(a+z) - log Gamma(a) for real a > 0, evaluated without the
/// large-argument cancellation of forming the two logs separately.
/// Requires Re(a+z) > 0.
Complex log_gamma_ratio(double a, Complex z);
double log_gamma_ratio(double a, double z);

/// Sum_{k=0}^{n-1} f(k) for a function holomorphic on the strip
/// 0 <= Re(z) <= n with subexponential growth o(e^{2pi|Im z|}), evaluated
/// from the contour-integral identity:
///   int_0^n f + (f(0) - f(n))/2
///   + i int_0^inf (f(is) - f(-is))/(e^{2 pi s} - 1) ds
///   - i int_0^inf (f(n+is) - f(n-is))/(e^{2 pi s} - 1) ds.
/// The caller asserts the hypotheses; tolerance failures raise QuadratureError.
Complex abel_plana_sum(const std::function<Complex(Complex)>& f, int n,
                       const QuadratureConfig& cfg = {});

}  // namespace betadet::specfun
