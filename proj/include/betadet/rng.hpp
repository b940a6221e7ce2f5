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

#include <cmath>
#include <cstdint>
#include <limits>

namespace betadet {

/// Deterministic random stream: xoshiro256++ seeded from (seed, stream_id)
/// through splitmix64. Identical (seed, stream_id) reproduces identical
/// sequences bit-for-bit on one platform. Independent stream_ids give
/// independent streams for sharded Monte Carlo.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) {
    std::uint64_t x = seed ^ fmix64(stream_id + 0x9e3779b97f4a7c15ULL);
    for (auto& w : s_) w = splitmix64(x);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;  // all-zero state is absorbing
    for (int i = 0; i < 8; ++i) next_u64();
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1), 53 bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1); safe under log().
  double next_double_pos() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }

  /// Standard normal, 256-layer ziggurat with the exact Marsaglia tail.
  double next_normal();

  double next_gamma(double shape);  // scale 1, any shape > 0
  double next_beta(double a, double b);
  double next_chi(double dof);  // chi distribution (sqrt of chi-square)

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t fmix64(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdULL;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ULL;
    k ^= k >> 33;
    return k;
  }

  std::uint64_t s_[4];
};

namespace detail {

/// Equal-area ziggurat tables for exp(-x^2/2), 256 layers.
/// x[i] = width of layer i (x[0] is the virtual base width V/f(R)),
/// y[i] = height of the bottom of layer i; y[256] closes at 1.
struct ZigguratTables {
  static constexpr int kLayers = 256;
  double x[kLayers + 1];
  double y[kLayers + 1];
  double r;

  // Builds the layer stack for tail cut r_try; returns closure defect y_N - 1.
  double build(double r_try) {
    const double f_r = std::exp(-0.5 * r_try * r_try);
    const double v = r_try * f_r + std::sqrt(M_PI / 2.0) * std::erfc(r_try / std::sqrt(2.0));
    x[0] = v / f_r;
    x[1] = r_try;
    y[0] = 0.0;
    y[1] = f_r;
    for (int i = 2; i < kLayers; ++i) {
      y[i] = y[i - 1] + v / x[i - 1];
      if (y[i] >= 1.0) return (y[i] - 1.0) + static_cast<double>(kLayers - i);
      x[i] = std::sqrt(-2.0 * std::log(y[i]));
    }
    y[kLayers] = y[kLayers - 1] + v / x[kLayers - 1];
    x[kLayers] = 0.0;
    return y[kLayers] - 1.0;
  }

  ZigguratTables() {
    double lo = 3.0, hi = 4.0;  // closure defect decreases in r
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (build(mid) > 0.0 ? lo : hi) = mid;
    }
    r = 0.5 * (lo + hi);
    build(r);
    y[kLayers] = 1.0;
  }
};

inline const ZigguratTables& ziggurat() {
  static const ZigguratTables tables;
  return tables;
}

}  // namespace detail

inline double RngStream::next_normal() {
  const auto& t = detail::ziggurat();
  for (;;) {
    const std::uint64_t bits = next_u64();
    const int i = static_cast<int>(bits & 255);
    const double sign = (bits & 256) ? -1.0 : 1.0;
    const double u = static_cast<double>(bits >> 9) * 0x1.0p-55;
    const double x = u * t.x[i];
    if (x < t.x[i + 1]) return sign * x;
    if (i == 0) {
      // Exact tail beyond r.
      for (;;) {
        const double xt = -std::log(next_double_pos()) / t.r;
        const double yt = -std::log(next_double_pos());
        if (yt + yt >= xt * xt) return sign * (t.r + xt);
      }
    }
    if (t.y[i] + next_double() * (t.y[i + 1] - t.y[i]) < std::exp(-0.5 * x * x)) {
      return sign * x;
    }
  }
}

/// Precomputed Marsaglia-Tsang constants for a Gamma shape >= 1.
struct GammaShape {
  double d, c;
  explicit GammaShape(double shape) : d(shape - 1.0 / 3.0), c(1.0 / (3.0 * std::sqrt(d))) {}
};

/// One accepted squeeze factor v; the Gamma(shape, 1) variate is d * v.
/// Splitting the draw this way lets product-form statistics accumulate the
/// random factors v and fold the deterministic sum of log d in once.
inline double gamma_squeeze_v(RngStream& rng, const GammaShape& g) {
  for (;;) {
    double x, v;
    do {
      x = rng.next_normal();
      v = 1.0 + g.c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_double_pos();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return v;
    if (std::log(u) < 0.5 * x2 + g.d * (1.0 - v + std::log(v))) return v;
  }
}

inline double RngStream::next_gamma(double shape) {
  if (!(shape > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  if (shape < 1.0) {
    const GammaShape g(shape + 1.0);
    return g.d * gamma_squeeze_v(*this, g) * std::pow(next_double_pos(), 1.0 / shape);
  }
  const GammaShape g(shape);
  return g.d * gamma_squeeze_v(*this, g);
}

inline double RngStream::next_beta(double a, double b) {
  const double x = next_gamma(a);
  const double y = next_gamma(b);
  return x / (x + y);
}

inline double RngStream::next_chi(double dof) { return std::sqrt(2.0 * next_gamma(0.5 * dof)); }

}  // namespace betadet
