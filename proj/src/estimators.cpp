// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hullwalk/estimators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "hullwalk/parallel.hpp"
#include "hullwalk/stats.hpp"

namespace hullwalk {

int resolve_threads(int requested) {
  if (const char* env = std::getenv("HULLWALK_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

constexpr double kZ95 = 1.959963984540054;

}  // namespace

std::string config_fingerprint(const WalkConfig& c) {
  std::string s = "d=" + std::to_string(c.d) + ";k=" + std::to_string(c.k) +
                  ";steps=" + std::to_string(c.steps) + ";variant=" + to_string(c.variant) +
                  ";sampler=" + to_string(c.effective_sampler()) + ";delta=" + shortest(c.delta) +
                  ";seed=" + std::to_string(c.seed);
  if (c.variant == Variant::kHomogeneous) {
    s += ";ell=";
    for (int i = 0; i < c.ell.size(); ++i) s += (i ? "," : "") + shortest(c.ell[i]);
  }
  return s;
}

std::vector<Trajectory> run_replicas(const WalkConfig& config, std::int64_t replicas, int threads,
                                     const RunOptions& options) {
  config.validate();
  std::vector<Trajectory> out(static_cast<std::size_t>(std::max<std::int64_t>(replicas, 0)));
  parallel_for(replicas, threads, [&](std::int64_t i) {
    WalkConfig c = config;
    c.replica = config.replica + static_cast<std::uint64_t>(i);
    out[static_cast<std::size_t>(i)] = run(c, options);
  });
  return out;
}

std::vector<renewal::SplitRun> run_split_replicas(const WalkConfig& config,
                                                  std::int64_t replicas, int threads) {
  config.validate();
  std::vector<renewal::SplitRun> out(static_cast<std::size_t>(std::max<std::int64_t>(replicas, 0)));
  parallel_for(replicas, threads, [&](std::int64_t i) {
    WalkConfig c = config;
    c.replica = config.replica + static_cast<std::uint64_t>(i);
    out[static_cast<std::size_t>(i)] = renewal::run_split(c);
  });
  return out;
}

SpeedEstimate speed_estimate(std::span<const Point> finals, std::int64_t steps,
                             std::string fingerprint) {
  if (finals.size() < 2) throw InvalidInput("speed_estimate needs at least two replicas");
  if (steps < 1000) throw InvalidInput("speed_estimate needs at least 1000 steps");
  std::vector<double> speeds;
  speeds.reserve(finals.size());
  for (const auto& x : finals) speeds.push_back(x.norm() / static_cast<double>(steps));
  SpeedEstimate e;
  e.v_hat = stats::mean(speeds);
  e.stderr_ = std::sqrt(stats::variance(speeds) / static_cast<double>(speeds.size()));
  e.ci95 = {e.v_hat - kZ95 * e.stderr_, e.v_hat + kZ95 * e.stderr_};
  e.replicas = static_cast<std::int64_t>(finals.size());
  e.steps = steps;
  e.fingerprint = std::move(fingerprint);
  return e;
}

SpeedEstimate speed_estimate(std::span<const Trajectory> runs) {
  if (runs.size() < 2) throw InvalidInput("speed_estimate needs at least two replicas");
  const std::string fp = config_fingerprint(runs.front().config);
  PointList finals;
  finals.reserve(runs.size());
  for (const auto& r : runs) {
    if (config_fingerprint(r.config) != fp)
      throw InvalidInput("speed_estimate: replicas come from different configs");
    if (r.steps_done != runs.front().steps_done)
      throw InvalidInput("speed_estimate: replicas have different lengths");
    finals.push_back(r.final_position);
  }
  return speed_estimate(finals, runs.front().steps_done, fp);
}

DirectionSample direction_stats(std::span<const Point> finals, int bins) {
  if (bins < 2) throw InvalidInput("direction_stats needs at least two bins");
  DirectionSample out;
  for (const auto& x : finals) {
    const double n = x.norm();
    if (n == 0.0) {
      ++out.excluded;
      continue;
    }
    out.unit_vectors.push_back(x / n);
  }
  if (out.excluded > 0)
    out.warning = std::to_string(out.excluded) + " replica(s) ended at the origin and were excluded";
  const auto m = static_cast<std::int64_t>(out.unit_vectors.size());
  if (m < 50) throw InvalidInput("direction_stats needs at least 50 replicas");
  const int d = static_cast<int>(out.unit_vectors.front().size());
  if (d == 2) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
    for (const auto& u : out.unit_vectors) {
      double a = std::atan2(u[1], u[0]);
      if (a < 0) a += kTwoPi;
      auto b = static_cast<int>(std::floor(a / kTwoPi * bins));
      counts[static_cast<std::size_t>(std::clamp(b, 0, bins - 1))] += 1;
    }
    const double expected = static_cast<double>(m) / bins;
    double chi2 = 0.0;
    for (auto c : counts) chi2 += (static_cast<double>(c) - expected) * (static_cast<double>(c) - expected) / expected;
    out.uniformity_statistic = chi2;
    out.p_value = stats::chi_squared_survival(chi2, bins - 1);
  } else {
    Point resultant = Point::Zero(d);
    for (int i = 0; i < d; ++i) {
      std::vector<double> col;
      col.reserve(out.unit_vectors.size());
      for (const auto& u : out.unit_vectors) col.push_back(u[i]);
      resultant[i] = stats::ordered_sum(col);
    }
    const double stat = d * resultant.squaredNorm() / static_cast<double>(m);
    out.uniformity_statistic = stat;
    out.p_value = stats::chi_squared_survival(stat, d);
  }
  return out;
}

DirectionSample direction_stats(std::span<const Trajectory> runs, int bins) {
  PointList finals;
  finals.reserve(runs.size());
  for (const auto& r : runs) finals.push_back(r.final_position);
  return direction_stats(finals, bins);
}

std::vector<double> drift_profile(const Trajectory& run) {
  std::vector<double> out;
  out.reserve(run.drift_window_sums.size());
  for (std::size_t i = 0; i < run.drift_window_sums.size(); ++i) {
    if (run.drift_window_counts[i] == 0) break;
    out.push_back(run.drift_window_sums[i] / static_cast<double>(run.drift_window_counts[i]));
  }
  return out;
}

std::vector<double> drift_profile(std::span<const double> increments, std::int64_t window) {
  if (window < 1) throw InvalidInput("drift window must be ≥ 1");
  std::vector<double> out;
  for (std::size_t start = 0; start < increments.size(); start += static_cast<std::size_t>(window)) {
    const std::size_t end = std::min(increments.size(), start + static_cast<std::size_t>(window));
    stats::CompensatedSum s;
    for (std::size_t i = start; i < end; ++i) s.add(increments[i]);
    out.push_back(s.value() / static_cast<double>(end - start));
  }
  return out;
}

DriftSummary summarize_drift(std::span<const Trajectory> runs) {
  if (runs.empty()) throw InvalidInput("summarize_drift needs at least one run");
  DriftSummary out;
  std::vector<double> tails;
  // Per-window spread across replicas gives the sigma for each window index.
  std::vector<std::vector<double>> by_window;
  for (const auto& r : runs) {
    const auto prof = drift_profile(r);
    if (prof.empty()) continue;
    tails.push_back(prof.back());
    if (by_window.size() < prof.size()) by_window.resize(prof.size());
    for (std::size_t w = 0; w < prof.size(); ++w) by_window[w].push_back(prof[w]);
  }
  out.tail_mean = stats::mean(tails);
  out.tail_stderr = tails.size() > 1 ? std::sqrt(stats::variance(tails) / static_cast<double>(tails.size())) : 0.0;
  out.min_window_mean = std::numeric_limits<double>::infinity();
  out.min_window_z = std::numeric_limits<double>::infinity();
  for (const auto& w : by_window) {
    const double m = stats::mean(w);
    const double se = w.size() > 1 ? std::sqrt(stats::variance(w) / static_cast<double>(w.size())) : 0.0;
    out.min_window_mean = std::min(out.min_window_mean, m);
    if (se > 0.0) out.min_window_z = std::min(out.min_window_z, m / se);
  }
  return out;
}

RenewalCrossCheck crosscheck_renewal_speed(std::span<const renewal::SplitRun> runs,
                                           const Point& ell) {
  if (runs.empty()) throw InsufficientSamples("crosscheck needs at least one split run");
  if (ell.size() != 2) throw UnsupportedDimension("renewal crosscheck is only available for d = 2");
  const double k = runs.front().config.k;
  const Point perp = make_point({-ell[1], ell[0]});
  std::vector<double> along, across, gaps;
  for (const auto& run : runs) {
    const auto& recs = run.renewals;
    for (std::size_t i = 1; i < recs.size(); ++i) {
      const Point dw = recs[i].anchor - recs[i - 1].anchor;
      along.push_back(dw.dot(ell));
      across.push_back(dw.dot(perp));
      gaps.push_back(static_cast<double>(recs[i].gap));
    }
  }
  const auto n = static_cast<std::int64_t>(gaps.size());
  if (n < kMinRenewalPairs)
    throw InsufficientSamples("crosscheck needs at least " + std::to_string(kMinRenewalPairs) +
                              " renewal pairs, got " + std::to_string(n));
  RenewalCrossCheck out;
  out.renewal_pairs = n;
  out.u_hat = stats::mean(along);
  out.lambda_hat = stats::mean(gaps);
  out.v_derived = out.u_hat / (k * out.lambda_hat);
  // Ratio-estimator standard error (delta method).
  std::vector<double> resid(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) resid[i] = along[i] - out.v_derived * k * gaps[i];
  out.v_stderr = std::sqrt(stats::variance(resid) / static_cast<double>(n)) / (k * out.lambda_hat);
  out.gap_lag1_autocorrelation = stats::lag1_autocorrelation(gaps);
  out.increment_lag1_autocorrelation = stats::lag1_autocorrelation(along);
  out.transverse_mean = stats::mean(across);
  out.transverse_stderr = std::sqrt(stats::variance(across) / static_cast<double>(n));
  return out;
}

SweepTable k_sweep(int d, std::vector<int> k_values, const WalkConfig& base,
                   std::int64_t replicas, int threads) {
  if (k_values.empty()) throw InvalidInput("k_sweep needs at least one k");
  for (int k : k_values)
    if (k < d - 1) throw ValidationError("k must be ≥ d−1 (got k=" + std::to_string(k) + ")");
  std::sort(k_values.begin(), k_values.end());
  k_values.erase(std::unique(k_values.begin(), k_values.end()), k_values.end());
  SweepTable table;
  table.d = d;
  for (int k : k_values) {
    WalkConfig c = base;
    c.d = d;
    c.k = k;
    c.trace_thin = c.steps;
    const auto runs = run_replicas(c, replicas, threads);
    table.rows.push_back({k, speed_estimate(runs), false});
  }
  for (std::size_t i = 0; i + 1 < table.rows.size(); ++i) {
    const auto& a = table.rows[i].estimate.ci95;
    const auto& b = table.rows[i + 1].estimate.ci95;
    table.rows[i].overlaps_next = a.first <= b.second && b.first <= a.second;
    if (table.rows[i + 1].estimate.v_hat < table.rows[i].estimate.v_hat)
      table.monotone_nondecreasing = false;
  }
  return table;
}

}  // namespace hullwalk
