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
//
// Command-line harness: finite-n transform tables, expansion verification
// sweeps, and seeded Monte Carlo experiments with machine-readable output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "betadet/errors.hpp"
#include "betadet/predict.hpp"
#include "betadet/sampler.hpp"
#include "betadet/specfun.hpp"

using json = nlohmann::ordered_json;
using namespace betadet;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct CommonOpts {
  std::string ensemble = "laguerre";
  double beta = 2.0;
  std::vector<long> n_list;
  double tau1 = 1.0, tau2 = 1.0;
  double delta_re = 0.0, delta_im = 0.0;
  long samples = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string format = "csv";
  std::string out = "-";
  std::vector<double> z_grid;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--ensemble", o->ensemble, "gue|laguerre|gram|jacobi|circular|circular-jacobi")
      ->check(CLI::IsMember({"gue", "laguerre", "gram", "jacobi", "circular", "circular-jacobi"}));
  cmd->add_option("--beta", o->beta, "Dyson parameter beta > 0");
  cmd->add_option("--tau1", o->tau1, "Jacobi tau1 > 0");
  cmd->add_option("--tau2", o->tau2, "Jacobi tau2 > 0");
  cmd->add_option("--delta-re", o->delta_re, "Re(delta), circular-jacobi");
  cmd->add_option("--delta-im", o->delta_im, "Im(delta), circular-jacobi");
  cmd->add_option("--n", o->n_list, "matrix size(s); repeatable")->required();
  cmd->add_option("--samples", o->samples, "Monte Carlo sample count");
  cmd->add_option("--seed", o->seed, "RNG seed");
  cmd->add_option("--threads", o->threads, "worker threads (0 = auto)");
  cmd->add_option("--format", o->format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o->out, "output path ('-' = stdout)");
  cmd->add_option("--z", o->z_grid, "z grid point(s); repeatable");
}

EnsembleSpec make_spec(const CommonOpts& o, long n) {
  const BetaParam beta(o.beta);
  if (o.ensemble == "gue") return EnsembleSpec::gue(n);
  if (o.ensemble == "laguerre") return EnsembleSpec::laguerre(n, beta);
  if (o.ensemble == "gram") return EnsembleSpec::gram(n, beta);
  if (o.ensemble == "jacobi") return EnsembleSpec::jacobi(n, beta, o.tau1, o.tau2);
  if (o.ensemble == "circular") return EnsembleSpec::circular(n, beta);
  return EnsembleSpec::circular_jacobi(n, beta, {o.delta_re, o.delta_im});
}

void emit(const CommonOpts& o, const std::vector<std::string>& header,
          const std::vector<std::vector<std::string>>& rows, const json& extra) {
  std::ostringstream body;
  if (o.format == "csv") {
    for (std::size_t i = 0; i < header.size(); ++i) body << (i ? "," : "") << header[i];
    body << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) body << (i ? "," : "") << r[i];
      body << "\n";
    }
  } else {
    json doc = extra;
    json jrows = json::array();
    for (const auto& r : rows) {
      json jr;
      for (std::size_t i = 0; i < r.size(); ++i) jr[header[i]] = r[i];
      jrows.push_back(jr);
    }
    doc["rows"] = jrows;
    body << doc.dump(2) << "\n";
  }
  if (o.out == "-") {
    std::cout << body.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + o.out);
    f << body.str();
  }
}

json mc_result_json(const MCResult& r) {
  json j;
  j["n_samples"] = r.n_samples;
  j["mean"] = r.mean;
  j["variance"] = r.variance;
  j["kolmogorov_distance"] = r.kolmogorov_distance;
  json lap = json::array();
  for (const auto& p : r.empirical_laplace) {
    lap.push_back({{"z", p.z}, {"value", p.value}, {"std_err", p.std_err}});
  }
  j["empirical_laplace"] = lap;
  json tails = json::array();
  for (const auto& t : r.tail_counts) {
    tails.push_back({{"threshold", t.threshold}, {"count", t.count}});
  }
  j["tail_counts"] = tails;
  json wins = json::array();
  for (const auto& w : r.window_counts) {
    wins.push_back({{"a", w.window.a},
                    {"b", w.window.b},
                    {"delta_exp", w.window.delta_exp},
                    {"count", w.count}});
  }
  j["window_counts"] = wins;
  return j;
}

int cmd_psi_table(const CommonOpts& o) {
  if (o.z_grid.empty()) throw DomainError("psi-table: needs at least one --z");
  std::vector<std::vector<std::string>> rows;
  for (long n : o.n_list) {
    const auto spec = make_spec(o, n);
    const auto e = expansion_for(spec);
    for (double z : o.z_grid) {
      if (!(z > e.strip_lo)) throw DomainError("psi-table: z outside the strip");
      const double psi_n =
          e.degenerate
              ? std::numeric_limits<double>::quiet_NaN()
              : std::exp((log_mellin({z, 0.0}, spec) - z * e.mu).real() - e.t_n * z * z / 2.0);
      const double psi_limit = std::exp(e.log_psi({z, 0.0}).real());
      rows.push_back({std::to_string(n), fmt(z), fmt(psi_n), fmt(psi_limit),
                      fmt(std::abs(psi_n - psi_limit))});
    }
  }
  json extra;
  extra["command"] = "psi-table";
  extra["ensemble"] = o.ensemble;
  extra["beta"] = o.beta;
  emit(o, {"n", "z", "psi_n", "psi_limit", "abs_diff"}, rows, extra);
  return 0;
}

int cmd_verify_expansion(const CommonOpts& o, double stability_factor) {
  const BetaParam beta(o.beta);
  std::vector<double> zs = o.z_grid;
  if (zs.empty()) {
    long n_min = o.n_list.front();
    for (long n : o.n_list) n_min = std::min(n_min, n);
    const double w = 0.9 * (o.beta / 8.0) * std::pow(static_cast<double>(n_min), 1.0 / 6.0);
    for (int i = 0; i < 8; ++i) zs.push_back(-0.45 * w + (w + 0.45 * w) * i / 7.0);
  }
  std::vector<std::vector<std::string>> rows;
  double max_norm = 0.0;
  bool stable = true;
  for (double z : zs) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (long n : o.n_list) {
      const Complex zz{z, 0.0};
      std::string status = "ok";
      double exact = std::numeric_limits<double>::quiet_NaN();
      double approx = std::numeric_limits<double>::quiet_NaN();
      double abs_err = std::numeric_limits<double>::quiet_NaN();
      double norm_err = std::numeric_limits<double>::quiet_NaN();
      if (!(z > -beta.half())) {
        status = "outside_strip";
      } else {
        exact = gamma_ratio_sum(zz, n, beta).real();
        const double window = (o.beta / 8.0) * std::pow(static_cast<double>(n), 1.0 / 6.0);
        if (!(std::abs(z) < window)) {
          status = "outside_window";
        } else {
          approx = gamma_ratio_expansion(zz, n, beta).real();
          abs_err = std::abs(exact - approx);
          const double az = std::abs(z);
          norm_err = n * abs_err / (az + az * az + az * az * az);
          max_norm = std::max(max_norm, norm_err);
          lo = std::min(lo, norm_err);
          hi = std::max(hi, norm_err);
        }
      }
      rows.push_back({fmt(o.beta), fmt(z), std::to_string(n), fmt(exact), fmt(approx),
                      fmt(abs_err), fmt(norm_err), status});
    }
    if (hi > 0.0 && std::isfinite(lo) && hi / lo > stability_factor) stable = false;
  }
  rows.push_back({fmt(o.beta), "summary", "", "", "", "", fmt(max_norm),
                  stable ? "stable" : "unstable"});
  json extra;
  extra["command"] = "verify-expansion";
  extra["beta"] = o.beta;
  extra["max_normalized_err"] = max_norm;
  extra["stable"] = stable;
  emit(o, {"beta", "z", "n", "exact", "approx", "abs_err", "normalized_err", "status"}, rows,
       extra);
  return stable ? 0 : 1;
}

int cmd_mc_laplace(const CommonOpts& o, double soft_sigmas, int max_soft, double hard_sigmas) {
  const long n = o.n_list.front();
  const auto spec = make_spec(o, n);
  const auto e = expansion_for(spec);
  std::vector<double> zs = o.z_grid;
  if (zs.empty()) zs = {0.3, 0.5, 1.0};
  const auto r = mc_run(spec, o.samples, zs, {}, {}, o.seed, o.threads);
  std::vector<std::vector<std::string>> rows;
  int soft = 0;
  bool pass = true;
  for (const auto& p : r.empirical_laplace) {
    const double want = std::exp(log_mellin({p.z, 0.0}, spec).real() - p.z * e.mu);
    const double dev = std::abs(p.value - want) / p.std_err;
    if (dev > hard_sigmas) {
      pass = false;
    } else if (dev > soft_sigmas) {
      ++soft;
    }
    rows.push_back({fmt(p.z), fmt(p.value), fmt(p.std_err), fmt(want), fmt(dev)});
  }
  if (soft > max_soft) pass = false;
  json extra;
  extra["command"] = "mc-laplace";
  extra["ensemble"] = o.ensemble;
  extra["beta"] = o.beta;
  extra["n"] = n;
  extra["samples"] = o.samples;
  extra["seed"] = o.seed;
  extra["gate_passed"] = pass;
  extra["mc_result"] = mc_result_json(r);
  emit(o, {"z", "empirical", "std_err", "exact", "deviation_sigmas"}, rows, extra);
  return pass ? 0 : 1;
}

int cmd_mc_clt(const CommonOpts& o, std::vector<double> ys, double ratio_lo, double ratio_hi) {
  const long n = o.n_list.front();
  const auto spec = make_spec(o, n);
  const auto e = expansion_for(spec);
  if (ys.empty()) ys = {1.0, 2.0};
  std::vector<double> thresholds;
  for (double y : ys) thresholds.push_back(y * std::sqrt(e.t_n));
  const auto r = mc_run(spec, o.samples, {}, thresholds, {}, o.seed, o.threads);
  std::vector<std::vector<std::string>> rows;
  bool pass = true;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const double p_emp =
        static_cast<double>(r.tail_counts[i].count) / static_cast<double>(r.n_samples);
    const double p_clt = clt_tail(ys[i]);
    const double ratio = p_emp / p_clt;
    const double se = std::sqrt(p_emp * (1.0 - p_emp) / static_cast<double>(r.n_samples));
    if (!(ratio >= ratio_lo && ratio <= ratio_hi)) pass = false;
    rows.push_back({fmt(ys[i]), std::to_string(r.tail_counts[i].count), fmt(p_emp), fmt(se),
                    fmt(p_clt), fmt(ratio)});
  }
  json extra;
  extra["command"] = "mc-clt";
  extra["ensemble"] = o.ensemble;
  extra["beta"] = o.beta;
  extra["n"] = n;
  extra["samples"] = o.samples;
  extra["seed"] = o.seed;
  extra["ratio_gate"] = {ratio_lo, ratio_hi};
  extra["gate_passed"] = pass;
  extra["mc_result"] = mc_result_json(r);
  emit(o, {"y", "count", "empirical_p", "std_err", "clt_tail", "ratio"}, rows, extra);
  return pass ? 0 : 1;
}

int cmd_mc_berry_esseen(const CommonOpts& o, double K1, double min_ratio) {
  if (o.n_list.size() < 2) throw DomainError("mc-berry-esseen: needs at least two --n values");
  const auto zone = o.ensemble == "gue" ? zone_gue(K1) : zone_beta_ensemble(o.beta, K1);
  std::vector<std::vector<std::string>> rows;
  std::vector<double> dkols;
  bool below_bound = true;
  for (long n : o.n_list) {
    const auto spec = make_spec(o, n);
    const auto e = expansion_for(spec);
    const auto r = mc_run(spec, o.samples, {}, {}, {}, o.seed, o.threads);
    const double bound = berry_esseen_bound(e, zone);
    if (!(r.kolmogorov_distance < bound)) below_bound = false;
    dkols.push_back(r.kolmogorov_distance);
    rows.push_back({std::to_string(n), fmt(e.t_n), fmt(r.kolmogorov_distance), fmt(bound)});
  }
  const double ratio = dkols.front() / dkols.back();
  const bool pass = below_bound && ratio >= min_ratio;
  rows.push_back({"summary", "", fmt(ratio), below_bound ? "below_bound" : "bound_violated"});
  json extra;
  extra["command"] = "mc-berry-esseen";
  extra["ensemble"] = o.ensemble;
  extra["beta"] = o.beta;
  extra["samples"] = o.samples;
  extra["seed"] = o.seed;
  extra["K1"] = K1;
  extra["decay_ratio"] = ratio;
  extra["min_ratio"] = min_ratio;
  extra["gate_passed"] = pass;
  emit(o, {"n", "t_n", "d_kol", "bound"}, rows, extra);
  return pass ? 0 : 1;
}

int cmd_mc_mdp(const CommonOpts& o, double x, std::optional<double> tilt, double ratio_lo,
               double ratio_hi) {
  const long n = o.n_list.front();
  const auto spec = make_spec(o, n);
  const auto e = expansion_for(spec);
  const auto pred = mdp_probability(e, x);
  const double threshold = e.t_n * x;
  const double theta = tilt.value_or(x);
  const auto est = tilted_tail_probability(spec, threshold, theta, o.samples, o.seed, o.threads);
  const double ratio = est.probability / pred.probability;
  const bool pass = ratio >= ratio_lo && ratio <= ratio_hi;
  std::vector<std::vector<std::string>> rows;
  rows.push_back({fmt(x), fmt(threshold), fmt(est.probability), fmt(est.std_err),
                  fmt(pred.probability), fmt(pred.correction), fmt(ratio),
                  regime_name(pred.regime)});
  json extra;
  extra["command"] = "mc-mdp";
  extra["ensemble"] = o.ensemble;
  extra["beta"] = o.beta;
  extra["n"] = n;
  extra["samples"] = o.samples;
  extra["seed"] = o.seed;
  extra["tilt"] = theta;
  extra["ratio_gate"] = {ratio_lo, ratio_hi};
  extra["gate_passed"] = pass;
  emit(o, {"x", "threshold", "empirical_p", "std_err", "predicted_p", "psi", "ratio", "regime"},
       rows, extra);
  return pass ? 0 : 1;
}

int cmd_mc_llt(const CommonOpts& o, double a, double b, double delta_exp, double rel_tol) {
  const long n = o.n_list.front();
  const auto spec = make_spec(o, n);
  const auto e = expansion_for(spec);
  const double pred = llt_window_probability(e, a, b, delta_exp);
  const auto r = mc_run(spec, o.samples, {}, {}, {{a, b, delta_exp}}, o.seed, o.threads);
  const double p_emp =
      static_cast<double>(r.window_counts[0].count) / static_cast<double>(r.n_samples);
  const double ratio = p_emp / pred;
  const bool pass = std::abs(ratio - 1.0) <= rel_tol;
  std::vector<std::vector<std::string>> rows;
  rows.push_back({fmt(a), fmt(b), fmt(delta_exp), std::to_string(r.window_counts[0].count),
                  fmt(p_emp), fmt(pred), fmt(ratio)});
  json extra;
  extra["command"] = "mc-llt";
  extra["ensemble"] = o.ensemble;
  extra["beta"] = o.beta;
  extra["n"] = n;
  extra["samples"] = o.samples;
  extra["seed"] = o.seed;
  extra["rel_tol"] = rel_tol;
  extra["gate_passed"] = pass;
  extra["mc_result"] = mc_result_json(r);
  emit(o, {"a", "b", "delta_exp", "count", "empirical_p", "predicted_p", "ratio"}, rows, extra);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-n determinant statistics of beta-ensembles: exact transforms, "
               "asymptotic predictions, exact Monte Carlo"};
  app.require_subcommand(1);

  CommonOpts o;
  double stability_factor = 3.0;
  double soft_sigmas = 3.0, hard_sigmas = 4.0;
  int max_soft = 2;
  std::vector<double> ys;
  double ratio_lo = 0.9, ratio_hi = 1.1;
  double K1 = 1.0, min_ratio = 1.5;
  double mdp_x = 0.3, mdp_lo = 0.7, mdp_hi = 1.4;
  std::optional<double> tilt;
  double llt_a = -1.0, llt_b = 1.0, llt_delta = 0.5, llt_rel = 0.05;

  auto* p_psi = app.add_subcommand("psi-table", "residue psi_n vs limiting psi");
  add_common(p_psi, &o);

  auto* p_ver = app.add_subcommand("verify-expansion", "remainder sweep of the ratio expansion");
  add_common(p_ver, &o);
  p_ver->add_option("--stability-factor", stability_factor,
                    "allowed max/min spread of normalized errors across n");

  auto* p_lap = app.add_subcommand("mc-laplace", "empirical Laplace transform vs exact");
  add_common(p_lap, &o);
  p_lap->add_option("--soft-sigmas", soft_sigmas, "soft deviation gate");
  p_lap->add_option("--hard-sigmas", hard_sigmas, "hard deviation gate");
  p_lap->add_option("--max-soft", max_soft, "allowed points between the gates");

  auto* p_clt = app.add_subcommand("mc-clt", "tail ratio against the normal tail");
  add_common(p_clt, &o);
  p_clt->add_option("--y", ys, "tail points y (threshold y sqrt(t_n)); repeatable");
  p_clt->add_option("--ratio-lo", ratio_lo, "lower ratio gate");
  p_clt->add_option("--ratio-hi", ratio_hi, "upper ratio gate");

  auto* p_be = app.add_subcommand("mc-berry-esseen", "Kolmogorov distance vs the bound");
  add_common(p_be, &o);
  p_be->add_option("--K1", K1, "zone constant K1 (calibration)");
  p_be->add_option("--min-ratio", min_ratio, "required d_kol decay factor");

  auto* p_mdp = app.add_subcommand("mc-mdp", "moderate-deviation tail vs prediction");
  add_common(p_mdp, &o);
  p_mdp->add_option("--x", mdp_x, "deviation scale x (threshold t_n x)");
  p_mdp->add_option("--tilt", tilt, "importance-sampling tilt (default: x)");
  p_mdp->add_option("--ratio-lo", mdp_lo, "lower ratio gate");
  p_mdp->add_option("--ratio-hi", mdp_hi, "upper ratio gate");

  auto* p_llt = app.add_subcommand("mc-llt", "local-limit window count vs prediction");
  add_common(p_llt, &o);
  p_llt->add_option("--a", llt_a, "window left end");
  p_llt->add_option("--b", llt_b, "window right end");
  p_llt->add_option("--delta-exp", llt_delta, "window shrink exponent");
  p_llt->add_option("--rel-tol", llt_rel, "relative tolerance gate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (p_psi->parsed()) return cmd_psi_table(o);
    if (p_ver->parsed()) return cmd_verify_expansion(o, stability_factor);
    if (p_lap->parsed()) return cmd_mc_laplace(o, soft_sigmas, max_soft, hard_sigmas);
    if (p_clt->parsed()) return cmd_mc_clt(o, ys, ratio_lo, ratio_hi);
    if (p_be->parsed()) return cmd_mc_berry_esseen(o, K1, min_ratio);
    if (p_mdp->parsed()) return cmd_mc_mdp(o, mdp_x, tilt, mdp_lo, mdp_hi);
    if (p_llt->parsed()) return cmd_mc_llt(o, llt_a, llt_b, llt_delta, llt_rel);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
