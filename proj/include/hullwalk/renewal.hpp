// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hullwalk/geometry.hpp"
#include "hullwalk/rng.hpp"
#include "hullwalk/walk.hpp"

namespace hullwalk::renewal {

struct GoodGeometryParams {
  double delta = 0.1;
  double alpha = 0.01;

  /// alpha = delta^(d k).
  static GoodGeometryParams make(double delta, int d, int k);
};

/// k balls of radius delta centred at x + (i/2) u, i = 1..k.
struct BallChain {
  PointList centers;
  double radius = 0.0;

  static BallChain along(const Point& x, const Point& u, int k, double delta);

  bool contains(std::span<const Point> block) const;
  /// Uniform draw on the product of balls.
  PointList sample(CounterRng& rng) const;
  /// Uniform density on the product of balls (zero outside).
  double density(std::span<const Point> block) const;
};

/// Direction of the ball chain at the window head: x_k / |x_k| in origin
/// mode, ell in homogeneous mode.
Point chain_direction(const Point& head, const ConstraintMode& mode);

/// Sufficient test for good geometry of a (k+1)-point window: every path
/// through the ball chain at the head is admissible. Checks, for each stage,
/// that every fixed constraint point sits at least 2 delta behind the stage
/// centre along the chain direction. False for a head at the origin.
bool good_geometry(std::span<const Point> window, const GoodGeometryParams& params,
                   const ConstraintMode& mode);

/// Transition density of a k-step block from `state` (d = 2 only): the
/// product over steps of 1 / (area of the admissible sector). Zero if some
/// step leaves its admissible region.
double block_density_2d(const WalkState& state, std::span<const Point> block,
                        const WalkConfig& config);

struct BlockOutcome {
  bool good_geometry = false;
  bool renewal = false;
  /// Proposals used by the residual sampler (0 when not used).
  std::int64_t residual_proposals = 0;
};

inline constexpr std::int64_t kResidualCap = 1000000;

/// Advance `state` by one k-step block with the splitting construction.
/// `block` is the block index m; `v` the Bernoulli(alpha) bit. d = 2 only.
BlockOutcome split_step_block(WalkState& state, const WalkConfig& config, bool v,
                              const GoodGeometryParams& params, std::int64_t block);

/// Bernoulli(alpha) bit for block m, from its own stream.
bool renewal_bit(const WalkConfig& config, const GoodGeometryParams& params, std::int64_t block);

struct RenewalRecord {
  std::int64_t index = 0;
  std::int64_t tau = 0;
  Point anchor;
  /// tau_n - tau_{n-1}; for the first record, tau_1 + 1.
  std::int64_t gap = 0;
};

struct SplitRun {
  WalkConfig config;
  GoodGeometryParams params;
  std::int64_t blocks = 0;
  std::int64_t good_blocks = 0;
  std::int64_t residual_proposals = 0;
  std::vector<RenewalRecord> renewals;
  Point final_position;
  std::int64_t steps_done = 0;
};

/// Simulate config.steps steps: an initial plain block of k steps, then split
/// blocks. Deterministic in (seed, replica). d = 2 only.
SplitRun run_split(const WalkConfig& config);

struct SurvivalPoint {
  std::int64_t r = 0;
  std::int64_t at_least = 0;
  std::int64_t total = 0;
  double p_hat = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
  /// exp(-c r), c = -ln(1 - alpha^2).
  double bound = 1.0;
};

struct RenewalSummary {
  std::vector<RenewalRecord> records;
  /// Empirical P(gap >= 2r) over inter-renewal gaps (records 2, 3, ... of
  /// each run).
  std::vector<SurvivalPoint> survival;
  double renewals_per_block = 0.0;
  std::string warning;
};

inline constexpr std::int64_t kMaxSurvivalPoints = 200;

/// Pools renewals over runs. Survival is evaluated on an r grid of at most
/// `max_points` points.
RenewalSummary collect_renewals(std::span<const SplitRun> runs,
                                std::int64_t max_points = kMaxSurvivalPoints);
RenewalSummary collect_renewals(const SplitRun& run,
                                std::int64_t max_points = kMaxSurvivalPoints);

/// Every survival point satisfies p_hat <= bound + 3 binomial sigma.
bool survival_within_bound(const RenewalSummary& summary);

}  // namespace hullwalk::renewal
