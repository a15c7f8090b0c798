// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hullwalk/renewal.hpp"
#include "hullwalk/walk.hpp"

namespace hullwalk {

/// Identifies a replica family: every config field except the replica index.
std::string config_fingerprint(const WalkConfig& config);

/// Run replicas config.replica, config.replica + 1, ... in parallel. The
/// result is ordered by replica and independent of the thread count.
std::vector<Trajectory> run_replicas(const WalkConfig& config, std::int64_t replicas, int threads,
                                     const RunOptions& options = {});

std::vector<renewal::SplitRun> run_split_replicas(const WalkConfig& config,
                                                  std::int64_t replicas, int threads);

struct SpeedEstimate {
  double v_hat = 0.0;
  double stderr_ = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  std::int64_t replicas = 0;
  std::int64_t steps = 0;
  std::string fingerprint;
};

/// Mean over replicas of |X_N| / N. Requires at least two replicas of one
/// config family and N >= 1000.
SpeedEstimate speed_estimate(std::span<const Trajectory> runs);

/// Same estimator from final positions of runs of `steps` steps each.
SpeedEstimate speed_estimate(std::span<const Point> finals, std::int64_t steps,
                             std::string fingerprint = {});

struct DirectionSample {
  PointList unit_vectors;
  double uniformity_statistic = 0.0;
  double p_value = 1.0;
  std::int64_t excluded = 0;
  std::string warning;
};

inline constexpr int kDefaultDirectionBins = 12;

/// Uniformity of the limiting direction: chi-square over angular bins in
/// d = 2, Rayleigh test on the resultant length in d >= 3. Needs >= 50
/// usable replicas.
DirectionSample direction_stats(std::span<const Point> finals, int bins = kDefaultDirectionBins);
DirectionSample direction_stats(std::span<const Trajectory> runs,
                                int bins = kDefaultDirectionBins);

/// Windowed means of the radial increment (X_{n+1} - X_n) . X_n/|X_n|.
std::vector<double> drift_profile(const Trajectory& run);
std::vector<double> drift_profile(std::span<const double> increments, std::int64_t window);

struct DriftSummary {
  double tail_mean = 0.0;
  double tail_stderr = 0.0;
  /// Smallest windowed mean across replicas and windows, and its z-score.
  double min_window_mean = 0.0;
  double min_window_z = 0.0;
};

/// Tail-window drift averaged over replicas, plus the worst window.
DriftSummary summarize_drift(std::span<const Trajectory> runs);

struct RenewalCrossCheck {
  double u_hat = 0.0;
  double lambda_hat = 0.0;
  double v_derived = 0.0;
  double v_stderr = 0.0;
  std::int64_t renewal_pairs = 0;
  double gap_lag1_autocorrelation = 0.0;
  double increment_lag1_autocorrelation = 0.0;
  double transverse_mean = 0.0;
  double transverse_stderr = 0.0;
};

inline constexpr std::int64_t kMinRenewalPairs = 1000;

/// v = u / (k lambda) from renewal increments of homogeneous split runs along
/// `ell`. d = 2 only; needs at least 1000 renewal pairs.
RenewalCrossCheck crosscheck_renewal_speed(std::span<const renewal::SplitRun> runs,
                                           const Point& ell);

struct SweepRow {
  int k = 0;
  SpeedEstimate estimate;
  /// Whether this row's CI overlaps the next row's (last row: false).
  bool overlaps_next = false;
};

struct SweepTable {
  int d = 2;
  std::vector<SweepRow> rows;
  /// Reported, not asserted.
  bool monotone_nondecreasing = true;
};

/// One speed estimate per k (rows sorted by k). Each k must be >= d - 1.
SweepTable k_sweep(int d, std::vector<int> k_values, const WalkConfig& base,
                   std::int64_t replicas, int threads);

}  // namespace hullwalk
