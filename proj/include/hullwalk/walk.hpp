// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hullwalk/geometry.hpp"
#include "hullwalk/rng.hpp"
#include "hullwalk/types.hpp"

namespace hullwalk {

enum class IncrementLaw { kBall, kSphere };
enum class Variant { kBall, kSphere, kHomogeneous };
enum class Sampler { kRejection, kDirect2d };

inline constexpr int kDefaultProposalCap = 64;

struct WalkConfig {
  int d = 2;
  int k = 1;
  std::int64_t steps = 1000;
  Variant variant = Variant::kBall;
  /// Unit vector; used only by the homogeneous variant.
  Point ell;
  /// Unset means direct2d for d = 2, rejection otherwise.
  std::optional<Sampler> sampler;
  double delta = 0.1;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  std::int64_t trace_thin = 1;
  int proposal_cap = kDefaultProposalCap;
  std::int64_t drift_window = 1000;

  /// Throws ValidationError naming the violated constraint.
  void validate() const;

  Sampler effective_sampler() const {
    return sampler.value_or(d == 2 ? Sampler::kDirect2d : Sampler::kRejection);
  }
  IncrementLaw increment_law() const {
    return variant == Variant::kSphere ? IncrementLaw::kSphere : IncrementLaw::kBall;
  }
  ConstraintMode mode() const {
    if (variant == Variant::kHomogeneous) return HomogeneousMode{ell};
    return OriginMode{};
  }
};

std::string to_string(Variant v);
std::string to_string(Sampler s);
Variant parse_variant(const std::string& s);
Sampler parse_sampler(const std::string& s);

/// Walk state: X_n plus the last min(n, k) + 1 positions, oldest first.
struct WalkState {
  Point position;
  PointList window;
  std::int64_t n = 0;
  bool origin_included = true;

  static WalkState initial(const WalkConfig& config);

  /// The history set {X_j : max(1, n - k) <= j <= n - 1}. X_0 is excluded; in
  /// origin mode the origin is a constraint anyway.
  PointList history() const;

  /// Append the new position and drop entries older than k steps.
  void push(const Point& next, int k);
};

struct StepStats {
  int proposals_used = 1;
  double radial_increment = 0.0;
  /// Interior angle at X_n before the step (d = 2 only).
  std::optional<double> theta;
};

/// Uniform draw on B(x;1) minus the cone (ball law) or on the unit sphere
/// around x minus the cone (sphere law), by rejection. Returns the point and
/// the number of proposals used. Throws SamplerStall past `cap` proposals.
std::pair<Point, int> propose_rejection(const Point& x, const ConeGenerators& gens,
                                        IncrementLaw law, CounterRng& rng,
                                        int cap = kDefaultProposalCap);

/// Exact planar sampler: uniform angle on the admissible arc, radius with
/// P(r <= s) = s^2 (ball) or r = 1 (sphere).
Point sample_step_direct_2d(const Point& x, std::span<const Point> history, IncrementLaw law,
                            const ConstraintMode& mode, CounterRng& rng,
                            Arc* arc_out = nullptr);

/// Draw on a precomputed arc.
Point sample_on_arc(const Point& x, const Arc& arc, IncrementLaw law, CounterRng& rng);

/// One transition. Randomness is addressed by (seed, replica, n, lane 0).
StepStats advance(WalkState& state, const WalkConfig& config);

/// Same, but with an explicit generator (used by the renewal machinery).
StepStats advance(WalkState& state, const WalkConfig& config, CounterRng& rng);

struct TraceRecord {
  std::int64_t n = 0;
  Point x;
  std::optional<double> theta;
  int proposals = 0;
};

/// Output of `run`: thinned trace plus per-step aggregates.
struct Trajectory {
  WalkConfig config;
  std::vector<TraceRecord> trace;
  Point final_position;
  std::int64_t steps_done = 0;
  std::int64_t total_proposals = 0;
  /// Steps whose sample went through the rejection sampler.
  std::int64_t rejection_steps = 0;
  /// Sum of radial increments per drift window, in step order. The last
  /// window may be partial; see `drift_window_counts`.
  std::vector<double> drift_window_sums;
  std::vector<std::int64_t> drift_window_counts;
  /// Interior angles at every step (d = 2, only when requested).
  std::vector<double> thetas;
};

struct RunOptions {
  bool keep_thetas = false;
};

/// Error thrown by `run` after a sampler failure; carries the partial
/// trajectory up to the failing step.
class RunAborted : public Error {
 public:
  RunAborted(const std::string& what, Trajectory partial)
      : Error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Deterministic in (config.seed, config.replica).
Trajectory run(const WalkConfig& config, const RunOptions& options = {});

}  // namespace hullwalk
