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

#include "betadet/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "betadet/errors.hpp"

namespace betadet {

namespace {

// Running log of a product: multiplies factors, extracting the log whenever
// the block fills or the partial product nears the double range limits.
// Extracted logs are Neumaier-compensated.
class LogProduct {
 public:
  void mul(double f) {
    p_ *= f;
    if (p_ < 1e-280 || p_ > 1e280) {
      extract();
    } else if (++cnt_ == 64) {
      extract();
    }
  }
  double finish() {
    if (p_ != 1.0) extract();
    return sum_ + comp_;
  }
  void add_log(double x) { accumulate(x); }

 private:
  void extract() {
    accumulate(std::log(p_));
    p_ = 1.0;
    cnt_ = 0;
  }
  void accumulate(double x) {
    const double t = sum_ + x;
    comp_ += (std::abs(sum_) >= std::abs(x)) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double sum_ = 0.0, comp_ = 0.0, p_ = 1.0;
  int cnt_ = 0;
};

struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += (std::abs(sum) >= std::abs(x)) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  void merge(const Kahan& o) {
    add(o.sum);
    add(o.comp);
  }
  double get() const { return sum + comp; }
};

enum class Family { GammaProduct, BetaProduct, Verblunsky };

// Precompiled draw plan for one ensemble: factor shapes resolved once, the
// deterministic part of the log-product folded into a constant.
class StatisticPlan {
 public:
  StatisticPlan(const EnsembleSpec& spec, double tilt = 0.0) : spec_(spec), tilt_(tilt) {
    spec.validate();
    switch (spec.kind) {
      case Ensemble::GUE: {
        family_ = Family::GammaProduct;
        // |det| = prod chi_{2 floor(k/2)+1}; chi^2/2 ~ Gamma(floor(k/2)+1/2).
        scale_ = 0.5;
        base_ = 0.5 * spec.n * M_LN2;
        if (tilt != 0.0 && !(tilt * 0.5 > -0.5)) {
          throw DomainError("tilt outside the GUE strip");
        }
        for (long k = 1; k <= spec.n; ++k) {
          push_gamma_shape(0.5 + static_cast<double>(k / 2) + 0.5 * tilt);
        }
        break;
      }
      case Ensemble::Laguerre: {
        family_ = Family::GammaProduct;
        scale_ = 1.0;
        base_ = spec.n * M_LN2;  // Gamma factors carry scale 2
        if (tilt != 0.0 && !(tilt > -spec.beta.half())) {
          throw DomainError("tilt outside the Laguerre strip");
        }
        for (long k = 1; k <= spec.n; ++k) {
          push_gamma_shape(spec.beta.half() * static_cast<double>(k) + tilt);
        }
        break;
      }
      case Ensemble::Gram: {
        require_untilted(tilt);
        family_ = Family::BetaProduct;
        const double bp = spec.beta.half();
        for (long k = 2; k <= spec.n; ++k) {
          beta_pairs_.push_back({bp * static_cast<double>(spec.n - k + 1),
                                 bp * static_cast<double>(k - 1)});
        }
        break;
      }
      case Ensemble::Jacobi: {
        require_untilted(tilt);
        family_ = Family::BetaProduct;
        const double bp = spec.beta.half();
        const long n1 = static_cast<long>(std::floor(spec.n * spec.tau1));
        const long n2 = static_cast<long>(std::floor(spec.n * spec.tau2));
        for (long k = 1; k <= n1; ++k) {
          beta_pairs_.push_back({bp * static_cast<double>(k), bp * static_cast<double>(n2)});
        }
        break;
      }
      case Ensemble::Circular:
      case Ensemble::CircularJacobi: {
        require_untilted(tilt);
        if (spec.delta.imag() != 0.0 || spec.delta.real() < 0.0) {
          throw UnsupportedParameterError(
              "circular-jacobi sampling requires real delta >= 0 (exact transforms cover the "
              "rest)");
        }
        family_ = Family::Verblunsky;
        verblunsky_delta_ = spec.delta.real();
        const double bp = spec.beta.half();
        for (long k = 0; k + 1 < spec.n; ++k) {
          verblunsky_b_.push_back(bp * static_cast<double>(spec.n - k - 1));
        }
        break;
      }
    }
  }

  double draw(RngStream& rng, RejectionStats* stats = nullptr) const {
    switch (family_) {
      case Family::GammaProduct: {
        LogProduct lp;
        for (double a : small_shapes_) {
          lp.add_log(std::log(rng.next_gamma(a)));
        }
        for (const GammaShape& g : mt_shapes_) {
          lp.mul(gamma_squeeze_v(rng, g));
        }
        return base_ + scale_ * (mt_logd_ + lp.finish());
      }
      case Family::BetaProduct: {
        LogProduct lp;
        for (const auto& [a, b] : beta_pairs_) {
          const double x = rng.next_gamma(a);
          const double y = rng.next_gamma(b);
          lp.mul(x / (x + y));
        }
        return lp.finish();
      }
      case Family::Verblunsky:
        return draw_verblunsky(rng, stats);
    }
    return 0.0;
  }

  double tilt() const { return tilt_; }

 private:
  static void require_untilted(double tilt) {
    if (tilt != 0.0) {
      throw UnsupportedParameterError("tilted sampling is supported for Gamma-product ensembles");
    }
  }

  void push_gamma_shape(double a) {
    if (a < 1.0) {
      small_shapes_.push_back(a);
    } else {
      mt_shapes_.emplace_back(a);
      mt_logd_ += std::log(mt_shapes_.back().d);
    }
  }

  double draw_verblunsky(RngStream& rng, RejectionStats* stats) const {
    const double d = verblunsky_delta_;
    LogProduct lp;
    std::int64_t proposed = 0, accepted = 0;
    auto accept = [&](double q) {
      // q = |1 - gamma|^2 <= 4; target weight q^delta, envelope 4^delta.
      ++proposed;
      if (d == 0.0) {
        ++accepted;
        return true;
      }
      if (rng.next_double() < std::pow(0.25 * q, d)) {
        ++accepted;
        return true;
      }
      return false;
    };
    for (double b : verblunsky_b_) {
      for (;;) {
        const double r2 = 1.0 - std::pow(rng.next_double_pos(), 1.0 / b);
        const double theta = 2.0 * M_PI * rng.next_double();
        const double q = 1.0 - 2.0 * std::sqrt(r2) * std::cos(theta) + r2;
        if (accept(q)) {
          lp.mul(q);
          break;
        }
      }
    }
    for (;;) {  // boundary coefficient lives on the unit circle
      const double theta = 2.0 * M_PI * rng.next_double();
      const double q = 2.0 - 2.0 * std::cos(theta);
      if (accept(q)) {
        lp.mul(q);
        break;
      }
    }
    if (stats) {
      stats->proposed += proposed;
      stats->accepted += accepted;
    }
    return 0.5 * lp.finish();
  }

  EnsembleSpec spec_;
  Family family_ = Family::GammaProduct;
  double tilt_ = 0.0;
  double scale_ = 1.0;
  double base_ = 0.0;
  double mt_logd_ = 0.0;
  std::vector<double> small_shapes_;          // shapes < 1, drawn first (k ascending)
  std::vector<GammaShape> mt_shapes_;         // shapes >= 1, k ascending
  std::vector<std::pair<double, double>> beta_pairs_;
  std::vector<double> verblunsky_b_;
  double verblunsky_delta_ = 0.0;
};

constexpr int kShards = 64;

// Deterministic shard bounds: shard s covers [bounds[s], bounds[s+1]).
std::vector<std::int64_t> shard_bounds(std::int64_t n) {
  std::vector<std::int64_t> b(kShards + 1, 0);
  for (int s = 0; s <= kShards; ++s) b[s] = n * s / kShards;
  return b;
}

template <class ShardFn>
void run_sharded(std::int64_t n_samples, int threads, const ShardFn& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, kShards);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int s = next.fetch_add(1);
      if (s >= kShards) return;
      fn(s);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  (void)n_samples;
}

}  // namespace

double sample_log_det_gue(long n, RngStream& rng) {
  return StatisticPlan(EnsembleSpec::gue(n)).draw(rng);
}

double sample_log_det_laguerre(long n, const BetaParam& beta, RngStream& rng) {
  return StatisticPlan(EnsembleSpec::laguerre(n, beta)).draw(rng);
}

double sample_log_det_gram(long n, const BetaParam& beta, RngStream& rng) {
  return StatisticPlan(EnsembleSpec::gram(n, beta)).draw(rng);
}

double sample_log_det_jacobi(const EnsembleSpec& spec, RngStream& rng) {
  if (spec.kind != Ensemble::Jacobi) throw DomainError("sample_log_det_jacobi: spec is not Jacobi");
  return StatisticPlan(spec).draw(rng);
}

double sample_log_charpoly_circular_jacobi(const EnsembleSpec& spec, RngStream& rng,
                                           RejectionStats* stats) {
  if (spec.kind != Ensemble::Circular && spec.kind != Ensemble::CircularJacobi) {
    throw DomainError("sample_log_charpoly_circular_jacobi: spec is not circular");
  }
  return StatisticPlan(spec).draw(rng, stats);
}

double sample_statistic(const EnsembleSpec& spec, RngStream& rng) {
  return StatisticPlan(spec).draw(rng);
}

MCResult mc_run(const EnsembleSpec& spec, std::int64_t n_samples,
                const std::vector<double>& z_grid, const std::vector<double>& thresholds,
                const std::vector<WindowSpec>& windows, std::uint64_t seed, int threads) {
  spec.validate();
  if (n_samples < 1) throw DomainError("mc_run: requires n_samples >= 1");
  const Expansion exp = expansion_for(spec);
  if (exp.degenerate) {
    throw DomainError("mc_run: degenerate scale t_n <= 0; nothing to normalize against");
  }
  for (double z : z_grid) {
    if (!(z > exp.strip_lo)) throw DomainError("mc_run: z_grid point outside the strip");
  }
  const double sqrt_t = std::sqrt(exp.t_n);
  const std::size_t nz = z_grid.size(), nt = thresholds.size(), nw = windows.size();
  std::vector<double> window_scale(nw);
  for (std::size_t j = 0; j < nw; ++j) {
    window_scale[j] = std::pow(exp.t_n, 0.5 - windows[j].delta_exp);
  }

  struct Shard {
    Kahan sum_x, sum_x2;
    std::vector<Kahan> sum_w, sum_w2;
    std::vector<std::int64_t> tails, wins;
  };
  std::vector<Shard> shards(kShards);
  for (auto& s : shards) {
    s.sum_w.resize(nz);
    s.sum_w2.resize(nz);
    s.tails.assign(nt, 0);
    s.wins.assign(nw, 0);
  }
  std::vector<double> normalized(static_cast<std::size_t>(n_samples));
  const auto bounds = shard_bounds(n_samples);
  const StatisticPlan plan(spec);
  const double mu = exp.mu;

  run_sharded(n_samples, threads, [&](int s) {
    RngStream rng(seed, static_cast<std::uint64_t>(s));
    Shard& acc = shards[s];
    for (std::int64_t i = bounds[s]; i < bounds[s + 1]; ++i) {
      const double x = plan.draw(rng) - mu;
      normalized[static_cast<std::size_t>(i)] = x / sqrt_t;
      acc.sum_x.add(x);
      acc.sum_x2.add(x * x);
      for (std::size_t j = 0; j < nz; ++j) {
        const double w = std::exp(z_grid[j] * x);
        acc.sum_w[j].add(w);
        acc.sum_w2[j].add(w * w);
      }
      for (std::size_t j = 0; j < nt; ++j) {
        if (x >= thresholds[j]) ++acc.tails[j];
      }
      for (std::size_t j = 0; j < nw; ++j) {
        const double lo = windows[j].a * window_scale[j];
        const double hi = windows[j].b * window_scale[j];
        if (x > lo && x < hi) ++acc.wins[j];
      }
    }
  });

  MCResult out;
  out.n_samples = n_samples;
  Kahan sx, sx2;
  std::vector<Kahan> sw(nz), sw2(nz);
  std::vector<std::int64_t> tails(nt, 0), wins(nw, 0);
  for (const Shard& s : shards) {  // fixed merge order
    sx.merge(s.sum_x);
    sx2.merge(s.sum_x2);
    for (std::size_t j = 0; j < nz; ++j) {
      sw[j].merge(s.sum_w[j]);
      sw2[j].merge(s.sum_w2[j]);
    }
    for (std::size_t j = 0; j < nt; ++j) tails[j] += s.tails[j];
    for (std::size_t j = 0; j < nw; ++j) wins[j] += s.wins[j];
  }
  const double n = static_cast<double>(n_samples);
  out.mean = sx.get() / n;
  out.variance = n_samples > 1 ? std::max(0.0, (sx2.get() - n * out.mean * out.mean) / (n - 1.0))
                               : 0.0;
  out.empirical_laplace.resize(nz);
  for (std::size_t j = 0; j < nz; ++j) {
    const double m = sw[j].get() / n;
    const double var = n_samples > 1 ? std::max(0.0, (sw2[j].get() - n * m * m) / (n - 1.0)) : 0.0;
    out.empirical_laplace[j] = {z_grid[j], m, std::sqrt(var / n)};
  }
  out.tail_counts.resize(nt);
  for (std::size_t j = 0; j < nt; ++j) out.tail_counts[j] = {thresholds[j], tails[j]};
  out.window_counts.resize(nw);
  for (std::size_t j = 0; j < nw; ++j) out.window_counts[j] = {windows[j], wins[j]};

  std::sort(normalized.begin(), normalized.end());
  double dkol = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double phi = 0.5 * std::erfc(-normalized[static_cast<std::size_t>(i)] / std::sqrt(2.0));
    const double hi = static_cast<double>(i + 1) / n - phi;
    const double lo = phi - static_cast<double>(i) / n;
    dkol = std::max({dkol, hi, lo});
  }
  out.kolmogorov_distance = dkol;
  return out;
}

TiltedTailEstimate tilted_tail_probability(const EnsembleSpec& spec, double threshold,
                                           double tilt, std::int64_t n_samples,
                                           std::uint64_t seed, int threads) {
  spec.validate();
  if (n_samples < 1) throw DomainError("tilted_tail_probability: requires n_samples >= 1");
  if (spec.kind != Ensemble::GUE && spec.kind != Ensemble::Laguerre) {
    throw UnsupportedParameterError("tilted tail estimation: Gamma-product ensembles only");
  }
  const Expansion exp = expansion_for(spec);
  const StatisticPlan plan(spec, tilt);
  // weight(x) = E[e^{tilt X}] e^{-tilt x}; log E[e^{tilt X}] = log_mellin(tilt) - tilt mu.
  const double log_mgf =
      tilt == 0.0 ? 0.0 : log_mellin(Complex{tilt, 0.0}, spec).real() - tilt * exp.mu;

  struct Shard {
    Kahan sum_w, sum_w2;
  };
  std::vector<Shard> shards(kShards);
  const auto bounds = shard_bounds(n_samples);
  const double mu = exp.mu;
  run_sharded(n_samples, threads, [&](int s) {
    RngStream rng(seed, static_cast<std::uint64_t>(s));
    Shard& acc = shards[s];
    for (std::int64_t i = bounds[s]; i < bounds[s + 1]; ++i) {
      const double x = plan.draw(rng) - mu;
      if (x >= threshold) {
        const double w = std::exp(log_mgf - tilt * x);
        acc.sum_w.add(w);
        acc.sum_w2.add(w * w);
      }
    }
  });
  Kahan sw, sw2;
  for (const Shard& s : shards) {
    sw.merge(s.sum_w);
    sw2.merge(s.sum_w2);
  }
  const double n = static_cast<double>(n_samples);
  const double m = sw.get() / n;
  const double var = n_samples > 1 ? std::max(0.0, (sw2.get() - n * m * m) / (n - 1.0)) : 0.0;
  return {m, std::sqrt(var / n), tilt, n_samples};
}

}  // namespace betadet
