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

#include <functional>

#include "betadet/upsilon.hpp"

namespace betadet {

enum class Ensemble { GUE, Laguerre, Gram, Jacobi, Circular, CircularJacobi };

const char* ensemble_name(Ensemble e);

/// Which ensemble plus its parameters. tau1/tau2 apply to Jacobi only;
/// delta to CircularJacobi (Circular is delta = 0).
struct EnsembleSpec {
  Ensemble kind;
  BetaParam beta;
  long n;
  double tau1 = 1.0;
  double tau2 = 1.0;
  Complex delta{0.0, 0.0};

  static EnsembleSpec gue(long n);
  static EnsembleSpec laguerre(long n, BetaParam beta);
  static EnsembleSpec gram(long n, BetaParam beta);
  static EnsembleSpec jacobi(long n, BetaParam beta, double tau1, double tau2);
  static EnsembleSpec circular(long n, BetaParam beta);
  static EnsembleSpec circular_jacobi(long n, BetaParam beta, Complex delta);

  void validate() const;  // throws DomainError on bad parameters
  /// Left edge of the analyticity strip of the raw transform.
  double strip_lo() const;
};

/// Exact log E[|det W|^z] (log-Mellin transforms), as finite sums of
/// log-Gamma differences; exact for every n >= 1.
Complex log_mellin_gue(Complex z, long n);
Complex log_mellin_laguerre(Complex z, long n, const BetaParam& beta);
Complex log_mellin_gram(Complex z, long n, const BetaParam& beta);
Complex log_mellin_jacobi(Complex z, const EnsembleSpec& spec);
Complex log_mellin_circular_jacobi(Complex z, const EnsembleSpec& spec);
Complex log_mellin(Complex z, const EnsembleSpec& spec);  // dispatch on kind

/// Closed approximation of log prod_k Gamma(b k/2 + z)/Gamma(b k/2):
///   z((1/2 - 1/b) log n + n log(b n/2) - n) + z^2/b log n + Upsilon(z),
/// valid on Re(z) > -b/2 with |z| < (b/8) n^{1/6}.
Complex gamma_ratio_expansion(Complex z, long n, const BetaParam& beta);

/// Exact counterpart of gamma_ratio_expansion (the plain ratio sum, no
/// Laguerre 2^{nz} prefactor).
Complex gamma_ratio_sum(Complex z, long n, const BetaParam& beta);

/// Asymptotic description of the centered statistic X_n = log det - mu:
/// E[e^{zX_n}] ~ e^{t_n z^2/2} psi(z) on the strip, with psi = exp(log_psi).
struct Expansion {
  double mu;
  double t_n;
  std::function<Complex(Complex)> log_psi;
  double strip_lo;
  double strip_hi;
  bool degenerate;  // t_n <= 0: exact transforms fine, asymptotics meaningless
};

Expansion expansion_for(const EnsembleSpec& spec);

}  // namespace betadet
