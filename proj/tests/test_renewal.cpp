#include <doctest.h>

#include <cmath>
#include <vector>

#include "hullwalk/estimators.hpp"
#include "hullwalk/renewal.hpp"
#include "hullwalk/stats.hpp"

using namespace hullwalk;
using namespace hullwalk::renewal;

namespace {

WalkConfig planar(int k, std::int64_t steps, std::uint64_t seed = 17) {
  WalkConfig c;
  c.d = 2;
  c.k = k;
  c.steps = steps;
  c.seed = seed;
  c.trace_thin = steps;
  return c;
}

SplitRun synthetic(const std::vector<std::int64_t>& taus, double alpha) {
  SplitRun run;
  run.params.alpha = alpha;
  run.blocks = taus.empty() ? 10 : taus.back() + 1;
  std::int64_t prev = -1;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    run.renewals.push_back({static_cast<std::int64_t>(i) + 1, taus[i], Point::Zero(2), taus[i] - prev});
    prev = taus[i];
  }
  return run;
}

}  // namespace

TEST_CASE("alpha and the ball chain") {
  const auto p = GoodGeometryParams::make(0.1, 2, 3);
  CHECK(p.alpha == doctest::Approx(1e-6));
  CHECK_THROWS_AS(GoodGeometryParams::make(0.2, 2, 1), ValidationError);
  const auto chain = BallChain::along(make_point({1, 0}), make_point({0, 1}), 2, 0.1);
  REQUIRE(chain.centers.size() == 2);
  CHECK(chain.centers[1] == make_point({1, 1}));
  const std::vector<Point> in{make_point({1.05, 0.5}), make_point({1, 0.95})};
  const std::vector<Point> out{make_point({1.05, 0.5}), make_point({1, 0.85})};
  CHECK(chain.contains(in));
  CHECK_FALSE(chain.contains(out));
  CHECK(chain.density(in) == doctest::Approx(std::pow(kPi * 0.01, -2)));
  CHECK(chain.density(out) == 0.0);
  const auto chain3 = BallChain::along(make_point({1, 0, 0}), make_point({1, 0, 0}), 1, 0.1);
  const std::vector<Point> in3{make_point({1.5, 0, 0})};
  CHECK(chain3.density(in3) == doctest::Approx(1.0 / (4.0 / 3.0 * kPi * 1e-3)));
  CounterRng rng(1, 0, 0);
  for (int i = 0; i < 1000; ++i) CHECK(chain.contains(chain.sample(rng)));
}

TEST_CASE("good geometry examples") {
  const auto p = GoodGeometryParams::make(0.1, 2, 1);
  const ConstraintMode origin = OriginMode{};
  const std::vector<Point> far{make_point({1, 0}), make_point({3, 0})};
  CHECK(good_geometry(far, p, origin));
  const std::vector<Point> close{make_point({3, 0}), make_point({3.1, 0})};
  CHECK_FALSE(good_geometry(close, p, origin));
  const std::vector<Point> at_origin{make_point({1, 0}), make_point({0, 0})};
  CHECK_FALSE(good_geometry(at_origin, p, origin));
  const ConstraintMode hom = HomogeneousMode{make_point({0, 1})};
  const std::vector<Point> up{make_point({0, 0}), make_point({0, 0.5})};
  CHECK(good_geometry(up, p, hom));
  // The origin sits 0.5 behind the head, clear of the 2 delta margin.
  CHECK(good_geometry(up, p, origin));
  const std::vector<Point> near_origin{make_point({0, 0.1}), make_point({0, 0.15})};
  CHECK_FALSE(good_geometry(near_origin, p, origin));
}

TEST_CASE("chain blocks from good states are admissible") {
  // Property: whenever the sufficient test passes, every ball-chain block has
  // positive transition density, and the residual density is nonnegative.
  for (int k : {1, 2, 3}) {
    CAPTURE(k);
    WalkConfig c = planar(k, 1);
    const auto p = GoodGeometryParams::make(0.1, 2, k);
    WalkState s = WalkState::initial(c);
    int good = 0;
    for (int n = 0; n < 3000; ++n) {
      advance(s, c);
      if (s.window.size() != static_cast<std::size_t>(k) + 1) continue;
      if (!good_geometry(s.window, p, c.mode())) continue;
      ++good;
      const auto chain = BallChain::along(s.position, chain_direction(s.position, c.mode()), k, p.delta);
      CounterRng rng(2, 0, static_cast<std::uint64_t>(n), Lane::kBallChain);
      const auto block = chain.sample(rng);
      const double f = block_density_2d(s, block, c);
      CHECK(f > 0.0);
      CHECK(f >= p.alpha * chain.density(block) * (1 - 1e-12));
    }
    CHECK(good > 100);
  }
}

TEST_CASE("block density") {
  WalkConfig c = planar(1, 1);
  WalkState s = WalkState::initial(c);
  s.push(make_point({1, 0}), 1);
  // At x = (1, 0) with only the origin as constraint the admissible set is the
  // disk minus a ray: sector area pi.
  const std::vector<Point> ok{make_point({1.5, 0.2})};
  CHECK(block_density_2d(s, ok, c) == doctest::Approx(1.0 / kPi));
  const std::vector<Point> far{make_point({2.5, 0})};
  CHECK(block_density_2d(s, far, c) == 0.0);
  s.push(make_point({1, 1}), 1);
  // Now the hull angle at (1, 1) between (0, 0) and (1, 0) is pi/4.
  const std::vector<Point> back{make_point({0.9, 0.5})};
  CHECK(block_density_2d(s, back, c) == 0.0);
  const std::vector<Point> fwd{make_point({1.2, 1.5})};
  CHECK(block_density_2d(s, fwd, c) == doctest::Approx(1.0 / (kPi - kPi / 8)));
  WalkConfig d3 = c;
  d3.d = 3;
  d3.k = 2;
  CHECK_THROWS_AS(run_split(d3), UnsupportedDimension);
  WalkConfig sph = c;
  sph.variant = Variant::kSphere;
  CHECK_THROWS_AS(run_split(sph), InvalidInput);
}

TEST_CASE("renewal bits are Bernoulli(alpha)") {
  WalkConfig c = planar(1, 1);
  c.delta = 0.12;
  const auto p = GoodGeometryParams::make(c.delta, 2, 1);
  const int n = 200000;
  int hits = 0;
  for (int m = 0; m < n; ++m) hits += renewal_bit(c, p, m);
  const double sd = std::sqrt(n * p.alpha * (1 - p.alpha));
  CHECK(std::abs(hits - n * p.alpha) < 4 * sd);
  CHECK(renewal_bit(c, p, 5) == renewal_bit(c, p, 5));
}

TEST_CASE("split runs") {
  const WalkConfig c = planar(1, 20000);
  const auto a = run_split(c);
  const auto b = run_split(c);
  CHECK(a.final_position == b.final_position);
  CHECK(a.steps_done == c.steps);
  CHECK(a.blocks == (c.steps - c.k) / c.k);
  CHECK(a.good_blocks <= a.blocks);
  REQUIRE(!a.renewals.empty());
  CHECK(a.renewals.front().gap == a.renewals.front().tau + 1);
  for (std::size_t i = 1; i < a.renewals.size(); ++i) {
    CHECK(a.renewals[i].gap == a.renewals[i].tau - a.renewals[i - 1].tau);
    CHECK(a.renewals[i].gap >= 1);
    CHECK(a.renewals[i].index == static_cast<std::int64_t>(i) + 1);
  }
}

TEST_CASE("split runs keep the walk law") {
  // Fixed-horizon distance, split construction against plain sampling.
  WalkConfig c = planar(1, 400, 23);
  c.delta = 0.12;
  const auto split = run_split_replicas(c, 600, 1);
  WalkConfig plain_cfg = c;
  plain_cfg.seed = 24;
  const auto plain = run_replicas(plain_cfg, 600, 1);
  std::vector<double> a, b;
  std::int64_t renewals = 0;
  for (const auto& r : split) {
    a.push_back(r.final_position.norm());
    renewals += static_cast<std::int64_t>(r.renewals.size());
  }
  for (const auto& r : plain) b.push_back(r.final_position.norm());
  CHECK(renewals > 300);
  CHECK(stats::ks_two_sample(a, b).p_value > 1e-3);
}

TEST_CASE("renewal summaries") {
  const auto s = collect_renewals(synthetic({3, 5, 9, 10}, 0.5));
  // Gaps after the first record: 2, 4, 1.
  REQUIRE(s.records.size() == 4);
  REQUIRE(s.survival.size() == 3);
  CHECK(s.survival[0].p_hat == 1.0);
  CHECK(s.survival[1].at_least == 2);
  CHECK(s.survival[2].at_least == 1);
  CHECK(s.survival[1].bound == doctest::Approx(0.75));
  CHECK(s.survival[2].bound == doctest::Approx(0.5625));
  CHECK(s.renewals_per_block == doctest::Approx(4.0 / 11.0));
  CHECK(collect_renewals(synthetic({}, 0.5)).warning.size() > 0);
  CHECK(collect_renewals(synthetic({4}, 0.5)).warning.size() > 0);

  // Pooling drops each run's first record.
  const std::vector<SplitRun> runs{synthetic({3, 5}, 0.5), synthetic({1, 7}, 0.5)};
  const auto pooled = collect_renewals(std::span<const SplitRun>(runs));
  REQUIRE(pooled.survival.size() == 4);
  CHECK(pooled.survival[1].total == 2);
  CHECK(pooled.survival[1].at_least == 2);
  CHECK(pooled.survival[2].at_least == 1);

  // Gaps far longer than a geometric law allows break the bound.
  std::vector<std::int64_t> taus;
  for (int i = 0; i < 200; ++i) taus.push_back(40 * i);
  CHECK_FALSE(survival_within_bound(collect_renewals(synthetic(taus, 0.5))));
  std::vector<std::int64_t> dense;
  for (int i = 0; i < 200; ++i) dense.push_back(i);
  CHECK(survival_within_bound(collect_renewals(synthetic(dense, 0.5))));
  // A coarse grid never exceeds the point budget.
  std::vector<std::int64_t> spread;
  for (int i = 0; i < 50; ++i) spread.push_back(i * 1000);
  CHECK(collect_renewals(synthetic(spread, 0.5), 20).survival.size() <= 21);
}
