// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hullwalk/renewal.hpp"

#include <algorithm>
#include <cmath>

#include "hullwalk/stats.hpp"

namespace hullwalk::renewal {

GoodGeometryParams GoodGeometryParams::make(double delta, int d, int k) {
  if (!(delta > 0.0 && delta < 0.125)) throw ValidationError("delta must lie in (0, 1/8)");
  return {delta, std::pow(delta, d * k)};
}

BallChain BallChain::along(const Point& x, const Point& u, int k, double delta) {
  BallChain chain;
  chain.radius = delta;
  chain.centers.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) chain.centers.push_back(x + (0.5 * i) * u);
  return chain;
}

bool BallChain::contains(std::span<const Point> block) const {
  if (block.size() != centers.size()) return false;
  for (std::size_t i = 0; i < centers.size(); ++i)
    if ((block[i] - centers[i]).norm() > radius) return false;
  return true;
}

PointList BallChain::sample(CounterRng& rng) const {
  PointList out;
  out.reserve(centers.size());
  for (const auto& c : centers) out.push_back(c + radius * rng.in_unit_ball(static_cast<int>(c.size())));
  return out;
}

double BallChain::density(std::span<const Point> block) const {
  if (!contains(block) || centers.empty()) return 0.0;
  const int d = static_cast<int>(centers.front().size());
  // Volume of a d-ball of radius r: pi^(d/2) r^d / Gamma(d/2 + 1).
  const double ball = std::pow(kPi, 0.5 * d) * std::pow(radius, d) / std::tgamma(0.5 * d + 1.0);
  return std::pow(ball, -static_cast<double>(centers.size()));
}

Point chain_direction(const Point& head, const ConstraintMode& mode) {
  if (const auto* hom = std::get_if<HomogeneousMode>(&mode)) return hom->ell;
  return unit_or_zero(head);
}

bool good_geometry(std::span<const Point> window, const GoodGeometryParams& params,
                   const ConstraintMode& mode) {
  if (window.size() < 2) return false;
  const std::size_t k = window.size() - 1;
  const Point& head = window[k];
  if (head.squaredNorm() == 0.0) return false;
  const Point u = chain_direction(head, mode);
  const double margin = 2.0 * params.delta;
  const bool origin = std::holds_alternative<OriginMode>(mode);
  for (std::size_t stage = 0; stage < k; ++stage) {
    const double centre = head.dot(u) + 0.5 * static_cast<double>(stage);
    auto behind = [&](const Point& z) { return z.dot(u) - centre <= -margin; };
    // Window points still remembered at this stage: x_stage .. x_k, where the
    // head itself is the current point at stage 0.
    for (std::size_t j = stage; j <= k; ++j) {
      if (stage == 0 && j == k) continue;
      if (!behind(window[j])) return false;
    }
    if (origin && !behind(Point::Zero(head.size()))) return false;
    // Earlier chain balls sit (stage - j)/2 >= 1/2 behind; the next ball is
    // 1/2 ahead. Both clear 2 delta because delta < 1/8.
  }
  return true;
}

namespace {

void require_exact_split(const WalkConfig& config) {
  if (config.d != 2)
    throw UnsupportedDimension("exact split sampling is only available for d = 2");
  if (config.variant == Variant::kSphere)
    throw InvalidInput("split sampling needs increments with a density (ball law)");
}

}  // namespace

double block_density_2d(const WalkState& state, std::span<const Point> block,
                        const WalkConfig& config) {
  require_exact_split(config);
  WalkState s = state;
  const ConstraintMode mode = config.mode();
  double f = 1.0;
  for (const auto& y : block) {
    const PointList hist = s.history();
    const Arc arc = admissible_sector_2d<double>(s.position, hist, mode);
    const Point step = y - s.position;
    if (step.norm() > 1.0) return 0.0;
    if (step.squaredNorm() > 0.0 && !arc.contains(std::atan2(step[1], step[0]))) return 0.0;
    f *= 1.0 / arc.sector_area();
    s.push(y, config.k);
  }
  return f;
}

bool renewal_bit(const WalkConfig& config, const GoodGeometryParams& params, std::int64_t block) {
  CounterRng rng(config.seed, config.replica, static_cast<std::uint64_t>(block), Lane::kRenewalBit);
  return rng.bernoulli(params.alpha);
}

BlockOutcome split_step_block(WalkState& state, const WalkConfig& config, bool v,
                              const GoodGeometryParams& params, std::int64_t block) {
  require_exact_split(config);
  const int k = config.k;
  const ConstraintMode mode = config.mode();
  BlockOutcome out;
  out.good_geometry = state.window.size() == static_cast<std::size_t>(k) + 1 &&
                      good_geometry(state.window, params, mode);
  if (!out.good_geometry) {
    for (int j = 0; j < k; ++j) advance(state, config);
    return out;
  }
  const std::uint64_t n0 = static_cast<std::uint64_t>(state.n);
  const BallChain chain =
      BallChain::along(state.position, chain_direction(state.position, mode), k, params.delta);
  if (v) {
    CounterRng rng(config.seed, config.replica, n0, Lane::kBallChain);
    for (const auto& y : chain.sample(rng)) state.push(y, k);
    out.renewal = true;
    return out;
  }
  // Residual density by rejection: propose a plain block with density f and
  // accept with probability 1 - alpha u_Pi / f.
  const IncrementLaw law = config.increment_law();
  for (std::int64_t attempt = 0; attempt < kResidualCap; ++attempt) {
    CounterRng rng(config.seed, config.replica, n0,
                   static_cast<std::uint32_t>(Lane::kResidual) + static_cast<std::uint32_t>(attempt));
    WalkState trial = state;
    PointList proposal;
    proposal.reserve(static_cast<std::size_t>(k));
    double f = 1.0;
    for (int j = 0; j < k; ++j) {
      const PointList hist = trial.history();
      Arc arc;
      const Point y = sample_step_direct_2d(trial.position, hist, law, mode, rng, &arc);
      f *= 1.0 / arc.sector_area();
      proposal.push_back(y);
      trial.push(y, k);
    }
    out.residual_proposals = attempt + 1;
    const double accept = 1.0 - params.alpha * chain.density(proposal) / f;
    if (accept < -1e-12)
      throw SplitSamplerError("residual density negative: alpha too large for this state");
    if (rng.uniform() < accept) {
      state = std::move(trial);
      return out;
    }
  }
  throw SplitSamplerError("residual sampler exceeded " + std::to_string(kResidualCap) +
                          " proposals");
}

SplitRun run_split(const WalkConfig& config) {
  config.validate();
  require_exact_split(config);
  SplitRun out;
  out.config = config;
  out.params = GoodGeometryParams::make(config.delta, config.d, config.k);
  WalkState state = WalkState::initial(config);
  const std::int64_t k = config.k;
  for (std::int64_t j = 0; j < k && state.n < config.steps; ++j) advance(state, config);
  std::int64_t prev_tau = -1;
  for (std::int64_t m = 0; state.n + k <= config.steps; ++m) {
    const bool v = renewal_bit(config, out.params, m);
    const Point anchor = state.position;
    const BlockOutcome block = split_step_block(state, config, v, out.params, m);
    ++out.blocks;
    if (block.good_geometry) ++out.good_blocks;
    out.residual_proposals += block.residual_proposals;
    if (block.renewal) {
      RenewalRecord rec;
      rec.index = static_cast<std::int64_t>(out.renewals.size()) + 1;
      rec.tau = m;
      rec.anchor = anchor;
      rec.gap = m - prev_tau;
      prev_tau = m;
      out.renewals.push_back(std::move(rec));
    }
  }
  while (state.n < config.steps) advance(state, config);
  out.final_position = state.position;
  out.steps_done = state.n;
  return out;
}

RenewalSummary collect_renewals(std::span<const SplitRun> runs, std::int64_t max_points) {
  RenewalSummary s;
  if (runs.empty()) {
    s.warning = "no runs";
    return s;
  }
  std::int64_t blocks = 0;
  std::vector<std::int64_t> gaps;
  for (const auto& run : runs) {
    blocks += run.blocks;
    s.records.insert(s.records.end(), run.renewals.begin(), run.renewals.end());
    for (std::size_t i = 1; i < run.renewals.size(); ++i) gaps.push_back(run.renewals[i].gap);
  }
  s.renewals_per_block =
      blocks > 0 ? static_cast<double>(s.records.size()) / static_cast<double>(blocks) : 0.0;
  if (s.records.empty()) {
    s.warning = "no renewals in run (expected for short runs: alpha^2 is small)";
    return s;
  }
  if (gaps.empty()) {
    s.warning = "a single renewal per run: no inter-renewal gaps";
    return s;
  }
  const double alpha = runs.front().params.alpha;
  const double c = -std::log1p(-alpha * alpha);
  const std::int64_t max_r = *std::max_element(gaps.begin(), gaps.end()) / 2;
  const std::int64_t stride = std::max<std::int64_t>(1, (max_r + max_points - 1) / std::max<std::int64_t>(max_points, 1));
  std::sort(gaps.begin(), gaps.end());
  const auto total = static_cast<std::int64_t>(gaps.size());
  for (std::int64_t r = 0; r <= max_r; r += stride) {
    SurvivalPoint p;
    p.r = r;
    p.total = total;
    p.at_least = total - (std::lower_bound(gaps.begin(), gaps.end(), 2 * r) - gaps.begin());
    p.p_hat = static_cast<double>(p.at_least) / static_cast<double>(total);
    std::tie(p.wilson_lo, p.wilson_hi) = stats::wilson_interval(p.at_least, total);
    p.bound = std::exp(-c * static_cast<double>(r));
    s.survival.push_back(p);
  }
  return s;
}

RenewalSummary collect_renewals(const SplitRun& run, std::int64_t max_points) {
  return collect_renewals(std::span<const SplitRun>(&run, 1), max_points);
}

bool survival_within_bound(const RenewalSummary& summary) {
  for (const auto& p : summary.survival) {
    const double sigma = std::sqrt(p.bound * (1.0 - p.bound) / static_cast<double>(p.total));
    if (p.p_hat > p.bound + 3.0 * sigma + 1e-15) return false;
  }
  return true;
}

}  // namespace hullwalk::renewal
