// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace hullwalk::stats {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated sum over the values in sorted order. The result does not
/// depend on the order of the input.
double ordered_sum(std::span<const double> values);

/// Permutation-invariant mean (see ordered_sum).
double mean(std::span<const double> values);

/// Unbiased sample variance, permutation invariant.
double variance(std::span<const double> values);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

/// One-sample KS test against a continuous CDF.
KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS test (asymptotic p-value with the Stephens correction).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double z = 1.959963984540054);

/// P(chi^2_dof > x).
double chi_squared_survival(double x, double dof);

/// Standard error of the mean of a stationary series by non-overlapping batch means.
double batch_means_stderr(std::span<const double> series, int batches);

/// Lag-1 sample autocorrelation.
double lag1_autocorrelation(std::span<const double> series);

}  // namespace hullwalk::stats
