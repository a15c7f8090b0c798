// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#include "hullwalk/angle_chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hullwalk/quadrature.hpp"
#include "hullwalk/rng.hpp"
#include "hullwalk/types.hpp"

namespace hullwalk::angle_chain {

namespace {

constexpr double kRangeSlack = 1e-12;

void check_angle(double theta, const char* what) {
  if (!(theta >= -kRangeSlack && theta <= kPi + kRangeSlack))
    throw InvalidInput(std::string(what) + " must lie in [0, pi], got " + std::to_string(theta));
}

}  // namespace

double t_map(double theta, double u) {
  check_angle(theta, "theta");
  if (!(u >= 0.0 && u <= 1.0)) throw InvalidInput("u must lie in [0, 1]");
  return std::abs((kTwoPi - theta) * u - kPi);
}

Density stationary_law(double t) {
  if (t < 0.0) return {0.0, 0.0};
  if (t > kPi) return {0.0, 1.0};
  const double norm = 3.0 * kPi * kPi;
  return {2.0 * (kTwoPi - t) / norm, t * (4.0 * kPi - t) / norm};
}

double local_drift(double theta) {
  check_angle(theta, "theta");
  theta = std::clamp(theta, 0.0, kPi);
  return 2.0 * std::sin(theta) / (6.0 * kPi - 3.0 * theta);
}

double pushforward_cdf(double t, const std::function<double(double)>& pdf) {
  if (t <= 0.0) return 0.0;
  if (t >= kPi) return 1.0;
  auto short_range = [&](double y) { return 2.0 * t * pdf(y) / (kTwoPi - y); };
  auto long_range = [&](double y) { return (kPi + t - y) * pdf(y) / (kTwoPi - y); };
  return integrate(short_range, 0.0, kPi - t) + integrate(long_range, kPi - t, kPi);
}

double speed_closed_form() { return 8.0 / (9.0 * kPi * kPi); }

double speed_quadrature() {
  return integrate([](double t) { return local_drift(t) * stationary_law(t).pdf; }, 0.0, kPi,
                   1e-13);
}

std::vector<double> iterate_chain(double init, const std::vector<double>& uniforms) {
  std::vector<double> out;
  out.reserve(uniforms.size() + 1);
  double psi = init;
  out.push_back(psi);
  for (double u : uniforms) {
    psi = t_map(psi, u);
    out.push_back(psi);
  }
  return out;
}

ChainSample simulate_chain(std::int64_t n, std::uint64_t seed, double init, std::int64_t burnin) {
  if (n < 1) throw InvalidInput("chain length must be ≥ 1");
  if (burnin < 0) throw InvalidInput("burn-in must be ≥ 0");
  check_angle(init, "init");
  CounterRng rng(seed, 0, 0, Lane::kChain);
  double psi = std::clamp(init, 0.0, kPi);
  for (std::int64_t i = 0; i < burnin; ++i) psi = t_map(psi, rng.uniform());
  ChainSample out;
  out.samples.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    psi = t_map(psi, rng.uniform());
    out.samples.push_back(psi);
  }
  out.n_burnin = burnin;
  out.seed = seed;
  out.ks = stats::ks_one_sample(out.samples, [](double t) { return stationary_law(t).cdf; });
  return out;
}

SpeedValue speed_chain_mc(std::int64_t n, std::uint64_t seed) {
  if (n < 1000) throw InsufficientSamples("chain_mc needs at least 1000 samples");
  CounterRng rng(seed, 0, 0, Lane::kChain);
  double psi = kPi / 2;
  for (std::int64_t i = 0; i < kDefaultBurnin; ++i) psi = t_map(psi, rng.uniform());
  std::vector<double> drift(static_cast<std::size_t>(n));
  stats::CompensatedSum sum;
  for (auto& g : drift) {
    psi = t_map(psi, rng.uniform());
    g = local_drift(psi);
    sum.add(g);
  }
  return {sum.value() / static_cast<double>(n), stats::batch_means_stderr(drift, 50)};
}

}  // namespace hullwalk::angle_chain
