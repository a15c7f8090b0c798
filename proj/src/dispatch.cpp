// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "hullwalk/angle_chain.hpp"
#include "hullwalk/cli_io.hpp"
#include "hullwalk/estimators.hpp"
#include "hullwalk/parallel.hpp"
#include "hullwalk/renewal.hpp"

namespace hullwalk::io {

using nlohmann::json;

namespace {

struct Options {
  int d = 2;
  int k = 1;
  std::int64_t steps = 1000;
  std::int64_t replicas = 100;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  double delta = 0.1;
  std::string variant = "ball";
  std::string ell;
  std::string sampler;
  std::int64_t thin = 1;
  std::string out;
  std::string summary;
  std::string format = "jsonl";
  int threads = 0;
  // angle-chain
  std::int64_t n = 1000000;
  double init = kPi / 2;
  std::int64_t burnin = angle_chain::kDefaultBurnin;
  // sweep-k
  std::vector<int> k_values;
};

Point parse_ell(const std::string& s, int d) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("--ell: cannot parse '" + item + "'");
    }
  }
  if (static_cast<int>(v.size()) != d)
    throw ValidationError("--ell must have d = " + std::to_string(d) + " components");
  Point p(d);
  for (int i = 0; i < d; ++i) p[i] = v[static_cast<std::size_t>(i)];
  const double norm = p.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ValidationError("--ell must be a nonzero vector");
  return p / norm;
}

WalkConfig make_config(const Options& o) {
  WalkConfig c;
  c.d = o.d;
  c.k = o.k;
  c.steps = o.steps;
  c.variant = parse_variant(o.variant);
  if (c.variant == Variant::kHomogeneous) {
    c.ell = o.ell.empty() ? Point(Point::Unit(o.d, 0)) : parse_ell(o.ell, o.d);
  } else if (!o.ell.empty()) {
    throw ValidationError("--ell is only used with --variant homogeneous");
  }
  if (!o.sampler.empty()) c.sampler = parse_sampler(o.sampler);
  c.delta = o.delta;
  c.seed = o.seed;
  c.replica = o.replica;
  if (o.thin < 1) throw ValidationError("--thin must be ≥ 1");
  c.trace_thin = o.thin;
  c.validate();
  return c;
}

json point_json(const Point& p) {
  json a = json::array();
  for (int i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

json config_echo(const WalkConfig& c) {
  json j;
  j["d"] = c.d;
  j["k"] = c.k;
  j["steps"] = c.steps;
  j["variant"] = to_string(c.variant);
  j["ell"] = c.variant == Variant::kHomogeneous ? point_json(c.ell) : json(nullptr);
  j["sampler"] = to_string(c.effective_sampler());
  j["delta"] = c.delta;
  j["seed"] = c.seed;
  j["replica"] = c.replica;
  j["thin"] = c.trace_thin;
  return j;
}

json speed_json(const SpeedEstimate& e) {
  return {{"v_hat", e.v_hat},
          {"stderr", e.stderr_},
          {"ci95", {e.ci95.first, e.ci95.second}},
          {"replicas", e.replicas},
          {"steps", e.steps},
          {"fingerprint", e.fingerprint}};
}

json direction_json(const DirectionSample& s, int d) {
  json j{{"test", d == 2 ? "chi_square_angle_bins" : "rayleigh"},
         {"statistic", s.uniformity_statistic},
         {"p_value", s.p_value},
         {"excluded", s.excluded}};
  if (!s.warning.empty()) j["warning"] = s.warning;
  return j;
}

json renewal_json(const std::vector<renewal::SplitRun>& runs) {
  json j;
  std::int64_t blocks = 0, good = 0, records = 0, gaps = 0;
  for (const auto& r : runs) {
    blocks += r.blocks;
    good += r.good_blocks;
    records += static_cast<std::int64_t>(r.renewals.size());
    if (!r.renewals.empty()) gaps += static_cast<std::int64_t>(r.renewals.size()) - 1;
  }
  j["alpha"] = runs.front().params.alpha;
  j["blocks"] = blocks;
  j["good_geometry_blocks"] = good;
  j["renewals"] = records;
  j["renewals_per_block"] = blocks > 0 ? static_cast<double>(records) / static_cast<double>(blocks) : 0.0;
  j["inter_renewal_gaps"] = gaps;
  return j;
}

class Command {
 public:
  Command(CLI::App& app, const std::string& name, const std::string& desc, Options& o)
      : sub_(app.add_subcommand(name, desc)), o_(o) {}

  Command& walk_flags() {
    sub_->add_option("--d", o_.d, "dimension");
    sub_->add_option("--k", o_.k, "memory length");
    sub_->add_option("--steps", o_.steps, "steps per replica");
    sub_->add_option("--seed", o_.seed, "master seed");
    sub_->add_option("--delta", o_.delta, "ball-chain radius for the splitting construction");
    sub_->add_option("--variant", o_.variant, "ball | sphere | homogeneous");
    sub_->add_option("--ell", o_.ell, "direction for the homogeneous variant, e.g. 1,0");
    sub_->add_option("--sampler", o_.sampler, "rejection | direct2d");
    sub_->add_option("--threads", o_.threads, "worker threads (HULLWALK_THREADS overrides)");
    return *this;
  }
  Command& replica_flags() {
    sub_->add_option("--replicas", o_.replicas, "independent replicas");
    return *this;
  }
  Command& out_flag(const std::string& what) {
    sub_->add_option("--out", o_.out, what);
    return *this;
  }
  CLI::App* app() { return sub_; }

 private:
  CLI::App* sub_;
  Options& o_;
};

void emit(json doc, const std::string& path, double seconds) {
  doc["wall_clock_seconds"] = seconds;
  if (path.empty()) {
    std::cout << summary_to_string(doc);
  } else {
    write_summary(doc, path);
  }
}

json base_doc(const std::string& command) {
  return {{"schema_version", kSchemaVersion}, {"command", command}};
}

int run_walk(const Options& o) {
  const WalkConfig c = make_config(o);
  const TraceFormat format = parse_format(o.format);
  json doc = base_doc("walk");
  doc["config"] = config_echo(c);
  const auto t0 = std::chrono::steady_clock::now();
  Trajectory traj;
  int code = 0;
  try {
    traj = run(c);
  } catch (const RunAborted& e) {
    std::cerr << "hullwalk walk: " << e.what() << "\n";
    traj = e.partial();
    doc["error"] = e.what();
    code = 3;
  }
  if (!o.out.empty()) write_trace(traj, o.out, format);
  doc["results"] = {{"steps_done", traj.steps_done},
                    {"final_position", point_json(traj.final_position)},
                    {"distance", traj.final_position.norm()},
                    {"total_proposals", traj.total_proposals},
                    {"rejection_steps", traj.rejection_steps},
                    {"trace_records", traj.trace.size()}};
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(std::move(doc), o.summary, secs);
  return code;
}

int run_speed(const Options& o) {
  WalkConfig c = make_config(o);
  c.trace_thin = c.steps;
  const int threads = resolve_threads(o.threads);
  const auto t0 = std::chrono::steady_clock::now();
  const auto runs = run_replicas(c, o.replicas, threads);
  json doc = base_doc("speed");
  doc["config"] = config_echo(c);
  doc["config"]["replicas"] = o.replicas;
  json results = speed_json(speed_estimate(runs));
  try {
    results["direction"] = direction_json(direction_stats(runs), c.d);
  } catch (const InvalidInput& e) {
    results["direction"] = {{"warning", e.what()}};
  }
  const auto drift = summarize_drift(runs);
  results["drift"] = {{"window", c.drift_window},
                      {"tail_mean", drift.tail_mean},
                      {"tail_stderr", drift.tail_stderr},
                      {"min_window_mean", drift.min_window_mean}};
  doc["results"] = std::move(results);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(std::move(doc), o.out, secs);
  return 0;
}

int run_angle_chain(const Options& o) {
  if (!(o.init >= 0.0 && o.init <= kPi)) throw ValidationError("--init must lie in [0, pi]");
  if (o.burnin < 0) throw ValidationError("--burnin must be ≥ 0");
  if (o.n < 2) throw ValidationError("--n must be ≥ 2");
  const auto t0 = std::chrono::steady_clock::now();
  const auto chain = angle_chain::simulate_chain(o.n, o.seed, o.init, o.burnin);
  json doc = base_doc("angle-chain");
  doc["config"] = {{"n", o.n}, {"seed", o.seed}, {"init", o.init}, {"burnin", o.burnin}};
  json results;
  results["ks"] = {{"reference_cdf", "t(4pi - t)/(3pi^2)"},
                   {"statistic", chain.ks.statistic},
                   {"p_value", chain.ks.p_value},
                   {"samples", chain.samples.size()}};
  results["speed"] = {{"closed_form", angle_chain::speed_closed_form()},
                      {"quadrature", angle_chain::speed_quadrature()}};
  if (o.n >= 1000) {
    const auto mc = angle_chain::speed_chain_mc(o.n, o.seed);
    results["speed"]["chain_mc"] = mc.value;
    results["speed"]["chain_mc_stderr"] = mc.stderr_;
  }
  doc["results"] = std::move(results);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(std::move(doc), o.out, secs);
  return 0;
}

json survival_json(const std::vector<renewal::SplitRun>& runs) {
  const auto s = renewal::collect_renewals(std::span<const renewal::SplitRun>(runs));
  json pts = json::array();
  for (const auto& p : s.survival)
    pts.push_back({{"r", p.r},
                   {"at_least", p.at_least},
                   {"total", p.total},
                   {"p_hat", p.p_hat},
                   {"wilson95", {p.wilson_lo, p.wilson_hi}},
                   {"bound", p.bound}});
  json j{{"points", std::move(pts)}, {"within_bound", renewal::survival_within_bound(s)}};
  if (!s.warning.empty()) j["warning"] = s.warning;
  return j;
}

int run_renewal(const Options& o) {
  const WalkConfig c = make_config(o);
  const int threads = resolve_threads(o.threads);
  const auto t0 = std::chrono::steady_clock::now();
  const auto runs = run_split_replicas(c, o.replicas, threads);
  json doc = base_doc("renewal");
  doc["config"] = config_echo(c);
  doc["config"]["replicas"] = o.replicas;
  json results = renewal_json(runs);
  results["survival"] = survival_json(runs);
  doc["results"] = std::move(results);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(std::move(doc), o.out, secs);
  return 0;
}

int run_crosscheck(Options o) {
  o.variant = "homogeneous";
  WalkConfig c = make_config(o);
  const int threads = resolve_threads(o.threads);
  const auto t0 = std::chrono::steady_clock::now();
  const auto runs = run_split_replicas(c, o.replicas, threads);
  PointList finals;
  for (const auto& r : runs) finals.push_back(r.final_position);
  const auto direct = speed_estimate(finals, c.steps, config_fingerprint(c));
  const auto cross = crosscheck_renewal_speed(runs, c.ell);
  json doc = base_doc("crosscheck");
  doc["config"] = config_echo(c);
  doc["config"]["replicas"] = o.replicas;
  const double z = (cross.v_derived - direct.v_hat) /
                   std::sqrt(cross.v_stderr * cross.v_stderr + direct.stderr_ * direct.stderr_);
  doc["results"] = {{"direct", speed_json(direct)},
                    {"renewal", {{"u_hat", cross.u_hat},
                                 {"lambda_hat", cross.lambda_hat},
                                 {"v_derived", cross.v_derived},
                                 {"stderr", cross.v_stderr},
                                 {"pairs", cross.renewal_pairs},
                                 {"gap_lag1_autocorrelation", cross.gap_lag1_autocorrelation},
                                 {"increment_lag1_autocorrelation", cross.increment_lag1_autocorrelation},
                                 {"transverse_mean", cross.transverse_mean},
                                 {"transverse_stderr", cross.transverse_stderr}}},
                    {"z", z},
                    {"agree", std::abs(z) <= 3.0}};
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(std::move(doc), o.out, secs);
  return 0;
}

int run_sweep(const Options& o) {
  if (o.k_values.empty()) throw ValidationError("--k-values is required");
  Options probe = o;
  probe.k = *std::max_element(o.k_values.begin(), o.k_values.end());
  const WalkConfig base = make_config(probe);
  const int threads = resolve_threads(o.threads);
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = k_sweep(o.d, o.k_values, base, o.replicas, threads);
  json doc = base_doc("sweep-k");
  doc["config"] = config_echo(base);
  doc["config"].erase("k");
  doc["config"]["k_values"] = o.k_values;
  doc["config"]["replicas"] = o.replicas;
  json rows = json::array();
  for (const auto& r : table.rows) {
    json row = speed_json(r.estimate);
    row["k"] = r.k;
    row["ci_overlaps_next"] = r.overlaps_next;
    rows.push_back(std::move(row));
  }
  doc["results"] = {{"rows", std::move(rows)}, {"monotone_nondecreasing", table.monotone_nondecreasing}};
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(std::move(doc), o.out, secs);
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Convex-hull-avoiding random walks with finite memory", "hullwalk"};
  app.require_subcommand(1);

  Command walk(app, "walk", "simulate one trajectory and write its trace", o);
  walk.walk_flags().out_flag("trace output path");
  walk.app()->add_option("--replica", o.replica, "replica index");
  walk.app()->add_option("--thin", o.thin, "keep every thin-th step in the trace");
  walk.app()->add_option("--format", o.format, "jsonl | csv");
  walk.app()->add_option("--summary", o.summary, "summary output path (default stdout)");

  Command speed(app, "speed", "estimate the asymptotic speed over replicas", o);
  speed.walk_flags().replica_flags().out_flag("summary output path (default stdout)");

  Command chain(app, "angle-chain", "simulate the planar angle chain and test its stationary law", o);
  chain.app()->add_option("--n", o.n, "post-burn-in samples");
  chain.app()->add_option("--seed", o.seed, "seed");
  chain.app()->add_option("--init", o.init, "initial angle in [0, pi]");
  chain.app()->add_option("--burnin", o.burnin, "discarded steps");
  chain.out_flag("summary output path (default stdout)");

  Command ren(app, "renewal", "run the splitting construction and report renewal statistics", o);
  ren.walk_flags().replica_flags().out_flag("summary output path (default stdout)");

  Command cross(app, "crosscheck", "compare the renewal-derived speed with the direct estimate", o);
  cross.walk_flags().replica_flags().out_flag("summary output path (default stdout)");

  Command sweep(app, "sweep-k", "speed estimates across memory lengths", o);
  sweep.walk_flags().replica_flags().out_flag("summary output path (default stdout)");
  sweep.app()->add_option("--k-values", o.k_values, "comma-separated memory lengths")->delimiter(',');

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return 0;
    }
    app.exit(e, std::cerr, std::cerr);
    return 2;
  }

  try {
    if (walk.app()->parsed()) return run_walk(o);
    if (speed.app()->parsed()) return run_speed(o);
    if (chain.app()->parsed()) return run_angle_chain(o);
    if (ren.app()->parsed()) return run_renewal(o);
    if (cross.app()->parsed()) return run_crosscheck(o);
    if (sweep.app()->parsed()) return run_sweep(o);
  } catch (const ValidationError& e) {
    std::cerr << "hullwalk: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "hullwalk: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

int dispatch(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args);
}

}  // namespace hullwalk::io
