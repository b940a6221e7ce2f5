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

#include "betadet/cgf.hpp"

#include <cmath>
#include <limits>

#include "betadet/errors.hpp"
#include "betadet/specfun.hpp"

namespace betadet {

namespace {

using specfun::kLog2Pi;
using specfun::log_gamma_ratio;

void require_strip(Complex z, double lo, const char* who) {
  if (!(z.real() > lo)) {
    throw DomainError(std::string(who) + ": z outside the analyticity strip");
  }
}

// Compensated (Neumaier) accumulation for the long ratio sums.
struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double t = sum + x;
    c += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double get() const { return sum + c; }
};

struct KahanC {
  Kahan re, im;
  void add(Complex x) {
    re.add(x.real());
    im.add(x.imag());
  }
  Complex get() const { return {re.get(), im.get()}; }
};

bool is_real(Complex z) { return z.imag() == 0.0; }

}  // namespace

const char* ensemble_name(Ensemble e) {
  switch (e) {
    case Ensemble::GUE: return "gue";
    case Ensemble::Laguerre: return "laguerre";
    case Ensemble::Gram: return "gram";
    case Ensemble::Jacobi: return "jacobi";
    case Ensemble::Circular: return "circular";
    case Ensemble::CircularJacobi: return "circular-jacobi";
  }
  return "?";
}

EnsembleSpec EnsembleSpec::gue(long n) {
  EnsembleSpec s{Ensemble::GUE, BetaParam(1, 1), n};
  s.validate();
  return s;
}
EnsembleSpec EnsembleSpec::laguerre(long n, BetaParam beta) {
  EnsembleSpec s{Ensemble::Laguerre, beta, n};
  s.validate();
  return s;
}
EnsembleSpec EnsembleSpec::gram(long n, BetaParam beta) {
  EnsembleSpec s{Ensemble::Gram, beta, n};
  s.validate();
  return s;
}
EnsembleSpec EnsembleSpec::jacobi(long n, BetaParam beta, double tau1, double tau2) {
  EnsembleSpec s{Ensemble::Jacobi, beta, n, tau1, tau2};
  s.validate();
  return s;
}
EnsembleSpec EnsembleSpec::circular(long n, BetaParam beta) {
  EnsembleSpec s{Ensemble::Circular, beta, n};
  s.validate();
  return s;
}
EnsembleSpec EnsembleSpec::circular_jacobi(long n, BetaParam beta, Complex delta) {
  EnsembleSpec s{Ensemble::CircularJacobi, beta, n, 1.0, 1.0, delta};
  s.validate();
  return s;
}

void EnsembleSpec::validate() const {
  if (n < 1) throw DomainError("EnsembleSpec: requires n >= 1");
  if (!(beta.value > 0.0)) throw DomainError("EnsembleSpec: requires beta > 0");
  switch (kind) {
    case Ensemble::GUE:
      if (beta.value != 2.0) throw DomainError("EnsembleSpec: GUE has beta = 2");
      break;
    case Ensemble::Jacobi:
      if (!(tau1 > 0.0) || !(tau2 > 0.0)) {
        throw DomainError("EnsembleSpec: Jacobi requires tau1, tau2 > 0");
      }
      if (static_cast<long>(std::floor(n * tau1)) < 1) {
        throw DomainError("EnsembleSpec: Jacobi requires floor(n tau1) >= 1");
      }
      break;
    case Ensemble::Circular:
      if (delta != Complex{0.0, 0.0}) {
        throw DomainError("EnsembleSpec: Circular has delta = 0");
      }
      break;
    case Ensemble::CircularJacobi:
      if (!(delta.real() > -1.0 / 3.0)) {
        throw DomainError("EnsembleSpec: requires Re(delta) > -1/3");
      }
      break;
    default:
      break;
  }
}

double EnsembleSpec::strip_lo() const {
  switch (kind) {
    case Ensemble::GUE: return -1.0;
    case Ensemble::Circular:
    case Ensemble::CircularJacobi: return -1.0 / 3.0;
    default: return -beta.half();
  }
}

Complex log_mellin_gue(Complex z, long n) {
  require_strip(z, -1.0, "log_mellin_gue");
  if (n < 1) throw DomainError("log_mellin_gue: requires n >= 1");
  // Factors repeat in pairs: floor(k/2) = j occurs twice except at the ends.
  if (is_real(z)) {
    Kahan acc;
    for (long k = 1; k <= n; ++k) {
      const double a = 0.5 + static_cast<double>(k / 2);
      acc.add(log_gamma_ratio(a, z.real() / 2.0));
    }
    return {0.5 * n * z.real() * M_LN2 + acc.get(), 0.0};
  }
  KahanC acc;
  for (long k = 1; k <= n; ++k) {
    const double a = 0.5 + static_cast<double>(k / 2);
    acc.add(log_gamma_ratio(a, z / 2.0));
  }
  return 0.5 * static_cast<double>(n) * z * M_LN2 + acc.get();
}

Complex gamma_ratio_sum(Complex z, long n, const BetaParam& beta) {
  const double bp = beta.half();
  require_strip(z, -bp, "gamma_ratio_sum");
  if (is_real(z)) {
    Kahan acc;
    for (long k = 1; k <= n; ++k) acc.add(log_gamma_ratio(bp * k, z.real()));
    return {acc.get(), 0.0};
  }
  KahanC acc;
  for (long k = 1; k <= n; ++k) acc.add(log_gamma_ratio(bp * k, z));
  return acc.get();
}

Complex log_mellin_laguerre(Complex z, long n, const BetaParam& beta) {
  require_strip(z, -beta.half(), "log_mellin_laguerre");
  if (n < 1) throw DomainError("log_mellin_laguerre: requires n >= 1");
  return static_cast<double>(n) * z * M_LN2 + gamma_ratio_sum(z, n, beta);
}

Complex log_mellin_gram(Complex z, long n, const BetaParam& beta) {
  const double bp = beta.half();
  require_strip(z, -bp, "log_mellin_gram");
  if (n < 1) throw DomainError("log_mellin_gram: requires n >= 1");
  // k = n term cancels identically.
  if (is_real(z)) {
    Kahan acc;
    const double at_n = log_gamma_ratio(bp * n, z.real());
    for (long k = 1; k < n; ++k) acc.add(log_gamma_ratio(bp * k, z.real()) - at_n);
    return {acc.get(), 0.0};
  }
  KahanC acc;
  const Complex at_n = log_gamma_ratio(bp * n, z);
  for (long k = 1; k < n; ++k) acc.add(log_gamma_ratio(bp * k, z) - at_n);
  return acc.get();
}

Complex log_mellin_jacobi(Complex z, const EnsembleSpec& spec) {
  if (spec.kind != Ensemble::Jacobi) throw DomainError("log_mellin_jacobi: spec is not Jacobi");
  spec.validate();
  const double bp = spec.beta.half();
  require_strip(z, -bp, "log_mellin_jacobi");
  const long n1 = static_cast<long>(std::floor(spec.n * spec.tau1));
  const long n2 = static_cast<long>(std::floor(spec.n * spec.tau2));
  if (is_real(z)) {
    Kahan acc;
    for (long k = 1; k <= n1; ++k) {
      acc.add(log_gamma_ratio(bp * k, z.real()) - log_gamma_ratio(bp * (n2 + k), z.real()));
    }
    return {acc.get(), 0.0};
  }
  KahanC acc;
  for (long k = 1; k <= n1; ++k) {
    acc.add(log_gamma_ratio(bp * k, z) - log_gamma_ratio(bp * (n2 + k), z));
  }
  return acc.get();
}

Complex log_mellin_circular_jacobi(Complex z, const EnsembleSpec& spec) {
  if (spec.kind != Ensemble::Circular && spec.kind != Ensemble::CircularJacobi) {
    throw DomainError("log_mellin_circular_jacobi: spec is not circular");
  }
  spec.validate();
  require_strip(z, -1.0 / 3.0, "log_mellin_circular_jacobi");
  const double bp = spec.beta.half();
  const Complex d = spec.delta;
  const Complex db = std::conj(d);
  if (is_real(z) && d.imag() == 0.0) {
    Kahan acc;
    const double dr = d.real(), x = z.real();
    for (long k = 0; k < spec.n; ++k) {
      const double a = bp * k + 1.0;
      acc.add(-log_gamma_ratio(a + dr, x / 2.0) * 2.0 + log_gamma_ratio(a + 2.0 * dr, x));
    }
    return {acc.get(), 0.0};
  }
  KahanC acc;
  for (long k = 0; k < spec.n; ++k) {
    const double a = bp * k + 1.0;
    // Gamma(a+d)/Gamma(a+d+z/2) * Gamma(a+db)/Gamma(a+db+z/2)
    //   * Gamma(a+d+db+z)/Gamma(a+d+db)
    const Complex t1 = specfun::log_gamma(Complex{a, 0.0} + d) -
                       specfun::log_gamma(Complex{a, 0.0} + d + z / 2.0);
    const Complex t2 = specfun::log_gamma(Complex{a, 0.0} + db) -
                       specfun::log_gamma(Complex{a, 0.0} + db + z / 2.0);
    const Complex t3 = specfun::log_gamma(Complex{a, 0.0} + d + db + z) -
                       specfun::log_gamma(Complex{a, 0.0} + d + db);
    acc.add(t1 + t2 + t3);
  }
  return acc.get();
}

Complex log_mellin(Complex z, const EnsembleSpec& spec) {
  switch (spec.kind) {
    case Ensemble::GUE: return log_mellin_gue(z, spec.n);
    case Ensemble::Laguerre: return log_mellin_laguerre(z, spec.n, spec.beta);
    case Ensemble::Gram: return log_mellin_gram(z, spec.n, spec.beta);
    case Ensemble::Jacobi: return log_mellin_jacobi(z, spec);
    case Ensemble::Circular:
    case Ensemble::CircularJacobi: return log_mellin_circular_jacobi(z, spec);
  }
  throw DomainError("log_mellin: unknown ensemble");
}

Complex gamma_ratio_expansion(Complex z, long n, const BetaParam& beta) {
  const double bp = beta.half();
  require_strip(z, -bp, "gamma_ratio_expansion");
  const double window = (beta.value / 8.0) * std::pow(static_cast<double>(n), 1.0 / 6.0);
  if (!(std::abs(z) < window)) {
    throw DomainError("gamma_ratio_expansion: |z| outside the (beta/8) n^(1/6) window");
  }
  const double logn = std::log(static_cast<double>(n));
  return z * ((0.5 - 1.0 / beta.value) * logn + n * std::log(bp * n) - static_cast<double>(n)) +
         z * z / beta.value * logn + upsilon_auto(z, beta);
}

Expansion expansion_for(const EnsembleSpec& spec) {
  spec.validate();
  const double n = static_cast<double>(spec.n);
  const double logn = std::log(n);
  const double beta = spec.beta.value;
  Expansion e;
  e.strip_lo = spec.strip_lo();
  e.strip_hi = std::numeric_limits<double>::infinity();
  switch (spec.kind) {
    case Ensemble::GUE:
      e.mu = 0.5 * kLog2Pi - n / 2.0 + n / 2.0 * logn;
      e.t_n = 0.5 * std::log(n / 2.0);
      e.log_psi = [](Complex z) { return upsilon_gue(z); };
      break;
    case Ensemble::Laguerre: {
      e.mu = (0.5 - 1.0 / beta) * logn - n + n * std::log(beta * n);
      e.t_n = 2.0 / beta * logn;
      const BetaParam b = spec.beta;
      e.log_psi = [b](Complex z) { return upsilon_auto(z, b); };
      break;
    }
    case Ensemble::Gram: {
      e.mu = (0.5 - 1.0 / beta) * logn - n + 1.0 / beta;
      e.t_n = 2.0 / beta * logn;
      const BetaParam b = spec.beta;
      e.log_psi = [b, beta](Complex z) { return upsilon_auto(z, b) - z * z / beta; };
      break;
    }
    case Ensemble::Jacobi: {
      const double n1 = std::floor(n * spec.tau1);
      const double n2 = std::floor(n * spec.tau2);
      const double lt = std::log(spec.tau1 * spec.tau2 / (spec.tau1 + spec.tau2));
      e.mu = (0.5 - 1.0 / beta) * logn + (0.5 - 1.0 / beta) * lt - n1 * std::log1p(n2 / n1) -
             n2 * std::log1p(n1 / n2);
      e.t_n = 2.0 / beta * logn;
      const BetaParam b = spec.beta;
      e.log_psi = [b, beta, lt](Complex z) { return upsilon_auto(z, b) + z * z / beta * lt; };
      break;
    }
    case Ensemble::Circular:
    case Ensemble::CircularJacobi: {
      const Complex d = spec.delta;
      e.mu = 2.0 * d.real() / beta * logn;
      e.t_n = logn / beta;
      const BetaParam b = spec.beta;
      const double bp = spec.beta.half();
      e.log_psi = [b, bp, d](Complex z) {
        const Complex db = std::conj(d);
        return upsilon_auto(1.0 + d - bp, b) - upsilon_auto(1.0 + d + z / 2.0 - bp, b) +
               upsilon_auto(1.0 + db - bp, b) - upsilon_auto(1.0 + db + z / 2.0 - bp, b) -
               upsilon_auto(1.0 + d + db - bp, b) + upsilon_auto(1.0 + d + db + z - bp, b);
      };
      break;
    }
  }
  e.degenerate = !(e.t_n > 0.0);
  return e;
}

}  // namespace betadet
