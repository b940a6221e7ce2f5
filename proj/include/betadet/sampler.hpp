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

#include <cstdint>
#include <vector>

#include "betadet/cgf.hpp"
#include "betadet/rng.hpp"

namespace betadet {

/// One draw of log|det W| (or Re log det(Id - U) for the circular kinds)
/// from the product-of-independent-factors decompositions. Exact in
/// distribution; O(n) per draw.
double sample_log_det_gue(long n, RngStream& rng);
double sample_log_det_laguerre(long n, const BetaParam& beta, RngStream& rng);
double sample_log_det_gram(long n, const BetaParam& beta, RngStream& rng);
double sample_log_det_jacobi(const EnsembleSpec& spec, RngStream& rng);

struct RejectionStats {
  std::int64_t proposed = 0;
  std::int64_t accepted = 0;
  double acceptance_rate() const {
    return proposed > 0 ? static_cast<double>(accepted) / static_cast<double>(proposed) : 1.0;
  }
};

/// Deformed-Verblunsky draw of Re log det(Id - U). Requires real delta >= 0
/// (rejection against the delta = 0 proposal with weight |1-z|^{2 delta});
/// complex or negative delta raises UnsupportedParameterError.
double sample_log_charpoly_circular_jacobi(const EnsembleSpec& spec, RngStream& rng,
                                           RejectionStats* stats = nullptr);

/// Dispatch on spec.kind.
double sample_statistic(const EnsembleSpec& spec, RngStream& rng);

struct LaplacePoint {
  double z;
  double value;    // empirical mean of e^{z X}, X = statistic - mu
  double std_err;
};

struct TailCount {
  double threshold;  // on the centered statistic X
  std::int64_t count;
};

struct WindowSpec {
  double a, b;
  double delta_exp;
};

struct WindowCount {
  WindowSpec window;
  std::int64_t count;  // of X in t_n^{1/2 - delta} (a, b), i.e. Y_n t_n^{delta} in (a, b)
};

struct MCResult {
  std::int64_t n_samples = 0;
  double mean = 0.0;      // of the centered statistic X
  double variance = 0.0;
  std::vector<LaplacePoint> empirical_laplace;
  double kolmogorov_distance = 0.0;  // of X/sqrt(t_n) against N(0,1)
  std::vector<TailCount> tail_counts;
  std::vector<WindowCount> window_counts;
};

/// Draws n_samples statistics centered by expansion_for(spec).mu and fills
/// every MCResult field. Deterministic given seed: work is split into fixed
/// logical shards with independent stream_ids and merged in shard order, so
/// the result is independent of the number of worker threads.
MCResult mc_run(const EnsembleSpec& spec, std::int64_t n_samples,
                const std::vector<double>& z_grid, const std::vector<double>& thresholds,
                const std::vector<WindowSpec>& windows, std::uint64_t seed, int threads = 0);

struct TiltedTailEstimate {
  double probability;
  double std_err;
  double tilt;
  std::int64_t n_samples;
};

/// Unbiased importance-sampled estimate of P[X >= c] for the Gamma-product
/// ensembles (GUE, Laguerre): exponential tilt e^{theta X} keeps every factor
/// in the Gamma family, the weight is exp(log_mellin(theta) - theta(X + mu)).
/// tilt = 0 reduces to plain counting.
TiltedTailEstimate tilted_tail_probability(const EnsembleSpec& spec, double threshold,
                                           double tilt, std::int64_t n_samples,
                                           std::uint64_t seed, int threads = 0);

}  // namespace betadet
