// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hullwalk/walk.hpp"

#include <cmath>
#include <string>

namespace hullwalk {

void WalkConfig::validate() const {
  if (d < 2) throw ValidationError("d must be ≥ 2");
  if (d > kMaxDim) throw ValidationError("d must be ≤ " + std::to_string(kMaxDim));
  if (k < d - 1)
    throw ValidationError("k must be ≥ d−1 (got d=" + std::to_string(d) +
                          ", k=" + std::to_string(k) +
                          "); with k ≤ d−2 the walk never interacts with its history");
  if (steps < 1) throw ValidationError("steps must be ≥ 1");
  if (!(delta > 0.0 && delta < 0.125)) throw ValidationError("delta must lie in (0, 1/8)");
  if (trace_thin < 1) throw ValidationError("thin must be ≥ 1");
  if (proposal_cap < 1) throw ValidationError("proposal cap must be ≥ 1");
  if (drift_window < 1) throw ValidationError("drift window must be ≥ 1");
  if (sampler == Sampler::kDirect2d && d != 2)
    throw ValidationError("sampler direct2d requires d = 2");
  if (variant == Variant::kHomogeneous) {
    if (ell.size() != d) throw ValidationError("ell must have d coordinates");
    if (!ell.allFinite() || std::abs(ell.norm() - 1.0) > 1e-9)
      throw ValidationError("ell must be a unit vector");
  }
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kBall: return "ball";
    case Variant::kSphere: return "sphere";
    case Variant::kHomogeneous: return "homogeneous";
  }
  return "?";
}

std::string to_string(Sampler s) {
  return s == Sampler::kRejection ? "rejection" : "direct2d";
}

Variant parse_variant(const std::string& s) {
  if (s == "ball") return Variant::kBall;
  if (s == "sphere") return Variant::kSphere;
  if (s == "homogeneous") return Variant::kHomogeneous;
  throw ValidationError("unknown variant '" + s + "'");
}

Sampler parse_sampler(const std::string& s) {
  if (s == "rejection") return Sampler::kRejection;
  if (s == "direct2d") return Sampler::kDirect2d;
  throw ValidationError("unknown sampler '" + s + "'");
}

WalkState WalkState::initial(const WalkConfig& config) {
  WalkState s;
  s.position = Point::Zero(config.d);
  s.window.reserve(static_cast<std::size_t>(config.k) + 2);
  s.window.push_back(s.position);
  s.n = 0;
  s.origin_included = config.variant != Variant::kHomogeneous;
  return s;
}

PointList WalkState::history() const {
  PointList h;
  const auto w = static_cast<std::int64_t>(window.size());
  const std::int64_t first_index = n - (w - 1);
  h.reserve(window.size());
  for (std::int64_t i = 0; i + 1 < w; ++i) {
    if (first_index + i >= 1) h.push_back(window[static_cast<std::size_t>(i)]);
  }
  return h;
}

void WalkState::push(const Point& next, int k) {
  window.push_back(next);
  if (window.size() > static_cast<std::size_t>(k) + 1) window.erase(window.begin());
  position = next;
  ++n;
}

std::pair<Point, int> propose_rejection(const Point& x, const ConeGenerators& gens,
                                        IncrementLaw law, CounterRng& rng, int cap) {
  const int d = static_cast<int>(x.size());
  if (gens.apex.size() != x.size()) throw InvalidInput("cone apex dimension mismatch");
  for (int attempt = 1; attempt <= cap; ++attempt) {
    const Point z = law == IncrementLaw::kBall ? rng.in_unit_ball(d) : rng.unit_vector(d);
    if (!cone_contains<double>(z, gens)) return {x + z, attempt};
  }
  throw SamplerStall("rejection sampler exceeded " + std::to_string(cap) + " proposals");
}

Point sample_on_arc(const Point& x, const Arc& arc, IncrementLaw law, CounterRng& rng) {
  const double phi = arc.start + arc.width * rng.uniform();
  const double r = law == IncrementLaw::kBall ? std::sqrt(rng.uniform()) : 1.0;
  Point y = x;
  y[0] += r * std::cos(phi);
  y[1] += r * std::sin(phi);
  return y;
}

Point sample_step_direct_2d(const Point& x, std::span<const Point> history, IncrementLaw law,
                            const ConstraintMode& mode, CounterRng& rng, Arc* arc_out) {
  const Arc arc = admissible_sector_2d<double>(x, history, mode);
  if (arc_out) *arc_out = arc;
  return sample_on_arc(x, arc, law, rng);
}

StepStats advance(WalkState& state, const WalkConfig& config, CounterRng& rng) {
  const Point x = state.position;
  const PointList hist = state.history();
  const ConstraintMode mode = config.mode();
  const IncrementLaw law = config.increment_law();
  StepStats stats;
  Point y;
  if (config.effective_sampler() == Sampler::kDirect2d) {
    Arc arc;
    y = sample_step_direct_2d(x, hist, law, mode, rng, &arc);
    stats.theta = arc.interior_angle();
  } else {
    const ConeGenerators gens = constraint_cone<double>(x, hist, mode);
    auto [next, used] = propose_rejection(x, gens, law, rng, config.proposal_cap);
    y = next;
    stats.proposals_used = used;
    if (config.d == 2) stats.theta = admissible_sector_2d<double>(x, hist, mode).interior_angle();
  }
  stats.radial_increment = (y - x).dot(unit_or_zero(x));
  state.push(y, config.k);
  return stats;
}

StepStats advance(WalkState& state, const WalkConfig& config) {
  CounterRng rng(config.seed, config.replica, static_cast<std::uint64_t>(state.n), Lane::kStep);
  return advance(state, config, rng);
}

namespace {

std::optional<double> theta_at(const WalkState& state, const WalkConfig& config) {
  if (config.d != 2) return std::nullopt;
  try {
    const PointList hist = state.history();
    return admissible_sector_2d<double>(state.position, hist, config.mode()).interior_angle();
  } catch (const DegenerateConfiguration&) {
    return std::nullopt;
  }
}

}  // namespace

Trajectory run(const WalkConfig& config, const RunOptions& options) {
  config.validate();
  Trajectory traj;
  traj.config = config;
  const auto nwin = static_cast<std::size_t>((config.steps + config.drift_window - 1) /
                                             config.drift_window);
  traj.drift_window_sums.assign(nwin, 0.0);
  traj.drift_window_counts.assign(nwin, 0);
  if (options.keep_thetas && config.d == 2)
    traj.thetas.reserve(static_cast<std::size_t>(config.steps));
  const bool rejection = config.effective_sampler() == Sampler::kRejection;

  WalkState state = WalkState::initial(config);
  int last_proposals = 0;
  for (std::int64_t n = 0; n < config.steps; ++n) {
    StepStats stats;
    try {
      stats = advance(state, config);
    } catch (const Error& e) {
      traj.final_position = state.position;
      traj.steps_done = state.n;
      throw RunAborted(std::string("step ") + std::to_string(n) + ": " + e.what(),
                       std::move(traj));
    }
    if (n % config.trace_thin == 0) {
      // state has advanced; the record describes X_n, which is window[-2].
      const Point& xn = state.window[state.window.size() - 2];
      traj.trace.push_back({n, xn, stats.theta, last_proposals});
    }
    if (options.keep_thetas && stats.theta && n >= 1) traj.thetas.push_back(*stats.theta);
    const auto w = static_cast<std::size_t>(n / config.drift_window);
    traj.drift_window_sums[w] += stats.radial_increment;
    traj.drift_window_counts[w] += 1;
    traj.total_proposals += stats.proposals_used;
    if (rejection) traj.rejection_steps += 1;
    last_proposals = stats.proposals_used;
  }
  traj.final_position = state.position;
  traj.steps_done = state.n;
  if (config.steps % config.trace_thin == 0)
    traj.trace.push_back({config.steps, state.position, theta_at(state, config), last_proposals});
  return traj;
}

}  // namespace hullwalk
