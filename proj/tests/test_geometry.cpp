#include <doctest.h>

#include <cmath>
#include <vector>

#include "hullwalk/geometry.hpp"
#include "hullwalk/rng.hpp"
#include "oracles.hpp"

using namespace hullwalk;

namespace {

ConeGenerators cone_of(std::initializer_list<Point> dirs, int d = 2) {
  ConeGenerators g(Point::Zero(d));
  for (const auto& v : dirs) g.add_direction(v);
  return g;
}

const std::vector<Point> kNoHistory;

}  // namespace

TEST_CASE("cone membership basics") {
  CHECK(cone_contains(make_point({-0.5, 0}), cone_of({make_point({-1, 0})})));
  CHECK_FALSE(cone_contains(make_point({1, 0}), cone_of({make_point({-1, 0})})));
  CHECK(cone_contains(make_point({0.3, 0.7}), cone_of({make_point({1, 0}), make_point({0, 1})})));
  CHECK_FALSE(
      cone_contains(make_point({-0.1, 1.0}), cone_of({make_point({1, 0}), make_point({0, 1})})));
  CHECK(cone_contains(make_point({0, 0}), cone_of({make_point({1, 0})})));
  CHECK_FALSE(cone_contains(make_point({1, 0}), ConeGenerators(Point::Zero(2))));
}

TEST_CASE("cone membership agrees with the weight-grid oracle") {
  // The oracle's gap for (-0.1, 1) against the positive quadrant is large.
  const double gap = oracle::cone_gap_angle(make_point({-0.1, 1.0}),
                                            {make_point({1, 0}), make_point({0, 1})});
  CHECK(gap > 10 * kDefaultConeTol);

  CounterRng rng(21, 0, 0);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const int m = 1 + i % 3;
    std::vector<Point> gens;
    ConeGenerators g(Point::Zero(2));
    for (int j = 0; j < m; ++j) {
      gens.push_back(rng.unit_vector(2) * (0.1 + rng.uniform()));
      g.add_direction(gens.back());
    }
    const Point v = rng.unit_vector(2) * (0.1 + 2 * rng.uniform());
    const double a = oracle::cone_gap_angle(v, gens);
    if (a > 1e-7 && a < 1e-5) continue;
    ++checked;
    CHECK(cone_contains(v, g) == (a <= 1e-7));
  }
  CHECK(checked > 2900);
}

TEST_CASE("cone membership in higher dimension") {
  const int d = 3;
  auto g = cone_of({make_point({1, 0, 0}), make_point({0, 1, 0}), make_point({0, 0, 1})}, d);
  CHECK(cone_contains(make_point({0.2, 0.3, 0.5}), g));
  CHECK_FALSE(cone_contains(make_point({0.2, -0.3, 0.5}), g));
  // Scale invariance of both the direction and the generators.
  auto big = cone_of({make_point({1e6, 0, 0}), make_point({0, 1e-6, 0})}, d);
  CHECK(cone_contains(make_point({3e-9, 5e-9, 0}), big));
  CHECK_FALSE(cone_contains(make_point({3e-9, 5e-9, 1e-9}), big));
}

TEST_CASE("cone membership errors") {
  auto g = cone_of({make_point({1, 0})});
  CHECK_THROWS_AS(cone_contains(make_point({1, 0, 0}), g), InvalidInput);
  CHECK_THROWS_AS(cone_contains(make_point({1, 0}), g, 0.0), InvalidInput);
}

TEST_CASE("admissible points in origin mode") {
  const OriginMode origin;
  CHECK(admissible_point<double>(make_point({0.5, 0}), Point::Zero(2), kNoHistory, origin));
  const Point x = make_point({1, 0});
  CHECK(admissible_point<double>(make_point({1.5, 0}), x, kNoHistory, origin));
  CHECK_FALSE(admissible_point<double>(make_point({0.5, 0}), x, kNoHistory, origin));
  CHECK_FALSE(admissible_point<double>(make_point({2.5, 0}), x, kNoHistory, origin));
  const std::vector<Point> hist{make_point({0, 1})};
  // Direction (-1, 0.5) sits between the rays to the origin and to (0, 1).
  CHECK_FALSE(admissible_point<double>(make_point({0.2, 0.4}), x, hist, origin));
  CHECK(admissible_point<double>(make_point({0.2, -0.4}), x, hist, origin));
}

TEST_CASE("admissible points in homogeneous mode") {
  const ConstraintMode mode = HomogeneousMode{make_point({0, 1})};
  CHECK_FALSE(admissible_point<double>(make_point({0, -0.5}), Point::Zero(2), kNoHistory, mode));
  CHECK(admissible_point<double>(make_point({0.5, 0.5}), Point::Zero(2), kNoHistory, mode));
  const ConstraintMode bad = HomogeneousMode{make_point({0, 2})};
  CHECK_THROWS_AS(admissible_point<double>(make_point({0.5, 0.5}), Point::Zero(2), kNoHistory, bad),
                  InvalidInput);
}

TEST_CASE("planar sector examples") {
  const OriginMode origin;
  const Point x = make_point({1, 0});
  {
    const std::vector<Point> h{make_point({1, 1})};
    const Arc a = admissible_sector_2d<double>(x, h, origin);
    CHECK(a.interior_angle() == doctest::Approx(kPi / 2));
    CHECK(a.width == doctest::Approx(1.5 * kPi));
  }
  {
    const std::vector<Point> h{make_point({1.5, 0})};
    const Arc a = admissible_sector_2d<double>(x, h, origin);
    CHECK(a.interior_angle() == doctest::Approx(kPi));
  }
  {
    const std::vector<Point> h{make_point({1, 0})};
    const Arc a = admissible_sector_2d<double>(x, h, origin);
    CHECK(a.interior_angle() == doctest::Approx(0.0));
    CHECK(a.width == doctest::Approx(kTwoPi));
  }
  {
    const Arc a = admissible_sector_2d<double>(Point::Zero(2), kNoHistory, origin);
    CHECK(a.width == doctest::Approx(kTwoPi));
  }
  {
    // x strictly inside the hull of its constraint points.
    const std::vector<Point> h{make_point({2, 1}), make_point({2, -1})};
    CHECK_THROWS_AS(admissible_sector_2d<double>(x, h, origin), DegenerateConfiguration);
  }
  CHECK_THROWS_AS(admissible_sector_2d<double>(make_point({1, 0, 0}), std::vector<Point>{}, origin),
                  UnsupportedDimension);
}

TEST_CASE("sector matches a dense angular grid of cone membership") {
  const OriginMode origin;
  const Point x = make_point({1, 0});
  const std::vector<Point> h{make_point({1, 1})};
  const Arc arc = admissible_sector_2d<double>(x, h, origin);
  const auto gens = constraint_cone<double>(x, h, origin);
  int admissible = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double phi = kTwoPi * (i + 0.5) / n;
    admissible += !cone_contains(make_point({std::cos(phi), std::sin(phi)}), gens);
  }
  CHECK(kTwoPi * admissible / n == doctest::Approx(arc.width).epsilon(1e-3));
}

TEST_CASE("sector and cone agree away from the arc endpoints") {
  CounterRng rng(22, 0, 0);
  const OriginMode origin;
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    // Legal planar states: x outside the hull of the origin and history, i.e.
    // the enclosing arc of directions has width below pi.
    const Point x = rng.unit_vector(2) * (0.5 + 3 * rng.uniform());
    std::vector<Point> h;
    for (int j = 0; j < 1 + i % 3; ++j) h.push_back(x + rng.in_unit_ball(2) * 2.0);
    Arc arc;
    try {
      arc = admissible_sector_2d<double>(x, h, origin);
    } catch (const DegenerateConfiguration&) {
      continue;
    }
    std::vector<Point> pts = h;
    pts.push_back(Point::Zero(2));
    const int samples = 4000;
    CHECK(std::abs(arc.interior_angle() - oracle::hull_angle_by_sweep(x, pts, samples)) <=
          2 * kTwoPi / samples);
    const auto gens = constraint_cone<double>(x, h, origin);
    for (int t = 0; t < 20; ++t) {
      const double phi = kTwoPi * rng.uniform();
      if (arc.endpoint_distance(phi) <= 1e-6) continue;
      ++checked;
      CHECK(arc.contains(phi) == !cone_contains(make_point({std::cos(phi), std::sin(phi)}), gens));
    }
  }
  CHECK(checked > 10000);
}
