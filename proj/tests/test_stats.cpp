#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hullwalk/quadrature.hpp"
#include "hullwalk/rng.hpp"
#include "hullwalk/stats.hpp"

using namespace hullwalk;

TEST_CASE("compensated sums are order independent") {
  std::vector<double> v;
  for (int i = 0; i < 1000; ++i) v.push_back(std::ldexp(1.0, (i * 37) % 80 - 40) * ((i % 3) ? 1 : -1));
  const double s = stats::ordered_sum(v);
  std::mt19937 gen(5);
  for (int t = 0; t < 20; ++t) {
    std::shuffle(v.begin(), v.end(), gen);
    CHECK(stats::ordered_sum(v) == s);
    CHECK(stats::mean(v) == s / 1000.0);
  }
  std::vector<double> cancel{1e16, 1.0, -1e16};
  CHECK(stats::ordered_sum(cancel) == 1.0);
}

TEST_CASE("mean and variance") {
  std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(stats::mean(v) == doctest::Approx(5.0));
  CHECK(stats::variance(v) == doctest::Approx(32.0 / 7.0));
}

TEST_CASE("kolmogorov survival") {
  // Tabulated quantiles of the Kolmogorov distribution.
  CHECK(stats::kolmogorov_survival(1.3580986393225505) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(stats::kolmogorov_survival(1.6276236115189478) == doctest::Approx(0.01).epsilon(1e-6));
  CHECK(stats::kolmogorov_survival(0.0) == 1.0);
  CHECK(stats::kolmogorov_survival(10.0) < 1e-40);
}

TEST_CASE("one-sample KS statistic") {
  // Hand-computed: samples {0.1, 0.5, 0.9} against U(0,1) give D = 0.2333...
  const auto r = stats::ks_one_sample({0.9, 0.1, 0.5}, [](double t) { return t; });
  CHECK(r.statistic == doctest::Approx(0.7 / 3.0));
}

TEST_CASE("two-sample KS") {
  const auto same = stats::ks_two_sample({1, 2, 3, 4}, {1, 2, 3, 4});
  CHECK(same.statistic == 0.0);
  const auto apart = stats::ks_two_sample({1, 2, 3}, {4, 5, 6, 7});
  CHECK(apart.statistic == 1.0);
  CounterRng rng(9, 0, 0);
  std::vector<double> a, b, c;
  for (int i = 0; i < 20000; ++i) {
    a.push_back(rng.uniform());
    b.push_back(rng.uniform());
    c.push_back(std::pow(rng.uniform(), 1.1));
  }
  CHECK(stats::ks_two_sample(a, b).p_value > 1e-3);
  CHECK(stats::ks_two_sample(a, c).p_value < 1e-3);
}

TEST_CASE("wilson interval") {
  // Reference values from the closed form with z = 1.96.
  auto [lo, hi] = stats::wilson_interval(0, 10);
  CHECK(lo == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(hi == doctest::Approx(0.27753).epsilon(1e-4));
  std::tie(lo, hi) = stats::wilson_interval(50, 100);
  CHECK(lo == doctest::Approx(0.40383).epsilon(1e-4));
  CHECK(hi == doctest::Approx(0.59617).epsilon(1e-4));
}

TEST_CASE("chi-squared survival") {
  CHECK(stats::chi_squared_survival(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(stats::chi_squared_survival(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(stats::chi_squared_survival(0.0, 4) == 1.0);
}

TEST_CASE("batch means on an AR(1) series") {
  // x_t = phi x_{t-1} + e_t has asymptotic variance of the mean sigma^2/(1-phi)^2 / n.
  const double phi = 0.5;
  CounterRng rng(10, 0, 0);
  std::vector<double> x(400000);
  double prev = 0.0;
  for (auto& v : x) {
    prev = phi * prev + rng.normal();
    v = prev;
  }
  const double se = stats::batch_means_stderr(x, 50);
  const double expected = std::sqrt(1.0 / ((1 - phi) * (1 - phi)) / static_cast<double>(x.size()));
  CHECK(se == doctest::Approx(expected).epsilon(0.25));
  CHECK(stats::lag1_autocorrelation(x) == doctest::Approx(phi).epsilon(0.02));
}

TEST_CASE("adaptive quadrature") {
  CHECK(integrate([](double t) { return std::sin(t); }, 0.0, kPi) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate([](double t) { return std::exp(-t * t); }, -5.0, 5.0) ==
        doctest::Approx(std::sqrt(kPi) * std::erf(5.0)).epsilon(1e-13));
  CHECK(integrate([](double t) { return std::sqrt(t); }, 0.0, 1.0) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}
