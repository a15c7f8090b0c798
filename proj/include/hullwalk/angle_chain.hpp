// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hullwalk/stats.hpp"

// Planar (d = 2), unit-memory (k = 1) machinery: the interior-angle recursion,
// its stationary law, and the exact speed it yields.

namespace hullwalk::angle_chain {

/// One step of the idealized angle chain, |(2pi - theta) u - pi|.
double t_map(double theta, double u);

struct Density {
  double pdf;
  double cdf;
};

/// Stationary law of the angle chain on [0, pi]:
/// pdf 2(2pi - t)/(3pi^2), cdf t(4pi - t)/(3pi^2).
Density stationary_law(double t);

/// Expected radial increment given interior angle theta:
/// 2 sin(theta) / (6pi - 3 theta).
double local_drift(double theta);

/// CDF of T(theta, U) at t when theta has density `pdf` on [0, pi].
double pushforward_cdf(double t, const std::function<double(double)>& pdf);

struct SpeedValue {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// 8 / (9 pi^2).
double speed_closed_form();

/// Integral of local_drift against the stationary pdf.
double speed_quadrature();

/// Average of local_drift over n post-burn-in chain samples, with a
/// batch-means standard error. Throws InsufficientSamples for n < 1000.
SpeedValue speed_chain_mc(std::int64_t n, std::uint64_t seed);

struct ChainSample {
  std::vector<double> samples;
  std::int64_t n_burnin = 0;
  std::uint64_t seed = 0;
  /// One-sample KS against the stationary CDF.
  stats::KsResult ks;
};

inline constexpr std::int64_t kDefaultBurnin = 1000;

/// Iterate t_map with i.i.d. uniforms from `init`, discard `burnin` steps and
/// keep the next n.
ChainSample simulate_chain(std::int64_t n, std::uint64_t seed, double init,
                           std::int64_t burnin = kDefaultBurnin);

/// Chain driven by an explicit sequence of uniforms (no burn-in). Returns
/// init followed by one state per uniform.
std::vector<double> iterate_chain(double init, const std::vector<double>& uniforms);

}  // namespace hullwalk::angle_chain
