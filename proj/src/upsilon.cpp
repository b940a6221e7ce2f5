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

#include "betadet/upsilon.hpp"

#include <cmath>
#include <numeric>

#include "betadet/errors.hpp"
#include "betadet/specfun.hpp"

namespace betadet {

namespace {

using specfun::binet_phi;
using specfun::kLog2Pi;
using specfun::log_barnes_g;
using specfun::log_gamma;

void require_strip(Complex z, double halfbeta, const char* who) {
  if (!(z.real() > -halfbeta)) {
    throw DomainError(std::string(who) + ": requires Re(z) > -beta/2");
  }
}

// e^w - 1 with small-|w| series to keep full relative accuracy.
Complex expm1_complex(Complex w) {
  if (std::abs(w) < 1e-3) {
    return w * (1.0 + w * (0.5 + w * (1.0 / 6.0 + w / 24.0)));
  }
  return std::exp(w) - 1.0;
}

// log Gamma and log G(1+z) continued left of the imaginary axis along the
// branch reached from the upper half-plane (principal logs with +0 imaginary
// part land there). The integer-halfbeta closed form evaluates both at
// arguments with real part down to -beta/2; the imaginary contributions of
// the two continuations cancel in the full combination.
Complex log_gamma_cont(Complex w) {
  Complex shift{0.0, 0.0};
  while (w.real() <= 0.5) {
    shift += std::log(w);
    w += 1.0;
  }
  return log_gamma(w) - shift;
}

Complex log_barnes_g_cont(Complex z) {
  Complex shift{0.0, 0.0};
  while (z.real() <= -0.5) {
    shift += log_gamma_cont(z + 1.0);
    z += 1.0;
  }
  return log_barnes_g(z) - shift;
}

}  // namespace

BetaParam::BetaParam(double beta) : value(beta) {
  if (!(beta > 0.0)) throw DomainError("BetaParam: requires beta > 0");
  const double half = 0.5 * beta;
  for (long q = 1; q <= 64; ++q) {
    const double p_real = half * static_cast<double>(q);
    const double p_round = std::round(p_real);
    if (p_round >= 1.0 && std::abs(p_real - p_round) < 1e-12 * std::max(1.0, p_real)) {
      const long p = static_cast<long>(p_round);
      const long g = std::gcd(p, q);
      half_ratio = std::make_pair(p / g, q / g);
      break;
    }
  }
}

BetaParam::BetaParam(long p, long q) {
  if (p < 1 || q < 1) throw DomainError("BetaParam: requires p, q >= 1");
  const long g = std::gcd(p, q);
  half_ratio = std::make_pair(p / g, q / g);
  value = 2.0 * static_cast<double>(p) / static_cast<double>(q);
}

Complex upsilon_quadrature(Complex z, const BetaParam& beta, const QuadratureConfig& cfg) {
  const double bp = beta.half();
  require_strip(z, bp, "upsilon_quadrature");
  if (z == Complex{0.0, 0.0}) return {0.0, 0.0};

  // Integrand g(s) = phi(s) (e^{-sz} - 1)/(e^{s b'} - 1); 0/0 at the origin,
  // handled by an order-s^2 series on [0, s0].
  const double s0 = 1e-3;
  const Complex c2 = z * z / 6.0 + z * bp / 4.0 + bp * bp / 12.0;
  const Complex series = -(z / bp) * (s0 / 12.0 - s0 * s0 * (z + bp) / 48.0 +
                                      s0 * s0 * s0 * (c2 / 12.0 - 1.0 / 720.0) / 3.0);

  // Truncation point: integrand bound below abs_tol/10, tail bounded by
  // (1/12) e^{-S min(Re z + b', b')} / b'.
  const double decay = std::min(z.real() + bp, bp);
  double s_max = std::max(8.0 / bp, 8.0);
  while ((1.0 / 12.0) * std::exp(-s_max * decay) / bp > cfg.abs_tol / 10.0 && s_max < 1e5) {
    s_max *= 1.5;
  }

  auto integrand = [&](double s) {
    if (s * bp > 30.0) {
      // (e^{-sz} - 1)/(e^{s b'} - 1) = (e^{-s(z+b')} - e^{-s b'})/(1 - e^{-s b'});
      // every exponent is damped here, while the direct form overflows.
      const double em = std::exp(-s * bp);
      return binet_phi(s) * (std::exp(-s * (z + bp)) - em) / (1.0 - em);
    }
    return binet_phi(s) * expm1_complex(-s * z) / std::expm1(s * bp);
  };
  const Complex integral = integrate(integrand, s0, s_max, cfg) + series;

  return bp * log_barnes_g(z / bp) - (z - 0.5) * log_gamma(z / bp + 1.0) + integral +
         z * z / (2.0 * bp) + z / 2.0;
}

Complex upsilon_closed_integer(Complex z, long halfbeta) {
  if (halfbeta < 1) throw DomainError("upsilon_closed_integer: requires beta/2 >= 1");
  const double bp = static_cast<double>(halfbeta);
  require_strip(z, bp, "upsilon_closed_integer");
  const double beta = 2.0 * bp;
  Complex sum = (z / beta) * kLog2Pi + (z * z / beta) * std::log(bp) -
                (2.0 / beta) * log_barnes_g_cont(z);
  for (long m = 1; m < halfbeta; ++m) {
    const double md = static_cast<double>(m);
    sum += (2.0 * md / beta) *
           (log_gamma(Complex{2.0 * md / beta, 0.0}) - log_gamma_cont((2.0 * md + 2.0 * z) / beta));
  }
  return sum;
}

Complex upsilon_closed_inv_integer(Complex z, long q) {
  if (q < 1) throw DomainError("upsilon_closed_inv_integer: requires q >= 1");
  const double qd = static_cast<double>(q);
  require_strip(z, 1.0 / qd, "upsilon_closed_inv_integer");
  Complex sum = z * ((0.5 - qd / 2.0) * std::log(1.0 / qd) + 0.5 * kLog2Pi) -
                (1.0 / qd) * log_barnes_g(qd * z);
  for (long m = 1; m < q; ++m) {
    const double md = static_cast<double>(m);
    sum += (md / qd - 1.0) * (log_gamma(Complex{md / qd, 0.0}) - log_gamma(md / qd + z));
  }
  return sum;
}

Complex upsilon_closed_rational(Complex z, long p, long q) {
  if (p < 1 || q < 1) throw DomainError("upsilon_closed_rational: requires p, q >= 1");
  const double pd = static_cast<double>(p), qd = static_cast<double>(q);
  require_strip(z, pd / qd, "upsilon_closed_rational");
  Complex sum = z * ((0.5 - qd / 2.0) * std::log(1.0 / qd) + 0.5 * kLog2Pi);
  for (long l = 0; l < p; ++l) {
    const double ld = static_cast<double>(l);
    sum -= (1.0 / qd) *
           (log_barnes_g((z + ld) * qd / pd) - log_barnes_g(Complex{ld * qd / pd, 0.0}));
    for (long m = 1; m < q; ++m) {
      const double md = static_cast<double>(m);
      sum += (md / qd - 1.0) *
             (log_gamma(Complex{md / qd + ld / pd, 0.0}) - log_gamma(md / qd + (z + ld) / pd));
    }
  }
  return sum;
}

Complex upsilon_shifted(Complex z, Complex delta, const BetaParam& beta,
                        const QuadratureConfig& cfg) {
  const double bp = beta.half();
  if (!(delta.real() > -bp) || !(delta.real() + z.real() > -bp)) {
    throw DomainError("upsilon_shifted: requires Re(delta) > -beta/2 and Re(z+delta) > -beta/2");
  }
  return upsilon_quadrature(z + delta, beta, cfg) - upsilon_quadrature(delta, beta, cfg);
}

Complex upsilon_gue(Complex z) {
  if (!(z.real() > -1.0)) throw DomainError("upsilon_gue: requires Re(z) > -1");
  // log G(w) at w = 1/2 and (z+1)/2 via log_barnes_g(w - 1).
  const Complex half{0.5, 0.0};
  return log_gamma(half) - log_gamma((z + 1.0) / 2.0) + 2.0 * log_barnes_g(-half) -
         2.0 * log_barnes_g((z - 1.0) / 2.0);
}

Complex upsilon_auto(Complex z, const BetaParam& beta) {
  if (beta.half_ratio) {
    const auto [p, q] = *beta.half_ratio;
    if (q == 1) return upsilon_closed_integer(z, p);
    if (p == 1) return upsilon_closed_inv_integer(z, q);
    return upsilon_closed_rational(z, p, q);
  }
  return upsilon_quadrature(z, beta);
}

}  // namespace betadet
