// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hullwalk/types.hpp"

namespace hullwalk {

inline constexpr double kDefaultConeTol = 1e-9;

/// The constraint set always contains the origin.
struct OriginMode {};

/// The origin is replaced by the semi-infinite ray -ell (unit vector).
template <class Scalar>
struct HomogeneousModeT {
  PointT<Scalar> ell;
};

template <class Scalar>
using ConstraintModeT = std::variant<OriginMode, HomogeneousModeT<Scalar>>;

using HomogeneousMode = HomogeneousModeT<double>;
using ConstraintMode = ConstraintModeT<double>;

/// Closed convex cone {apex + sum a_i dir_i : a_i >= 0}. Directions are
/// nonzero; points coinciding with the apex are dropped on insertion.
template <class Scalar>
struct ConeGeneratorsT {
  PointT<Scalar> apex;
  std::vector<PointT<Scalar>> directions;

  explicit ConeGeneratorsT(PointT<Scalar> apex_) : apex(std::move(apex_)) {}

  int dim() const { return static_cast<int>(apex.size()); }

  void add_point(const PointT<Scalar>& p) {
    if (p.size() != apex.size())
      throw InvalidInput("cone generator has dimension " + std::to_string(p.size()) +
                         ", apex has " + std::to_string(apex.size()));
    add_direction(p - apex);
  }

  void add_direction(const PointT<Scalar>& dir) {
    if (dir.size() != apex.size())
      throw InvalidInput("cone direction has dimension " + std::to_string(dir.size()) +
                         ", apex has " + std::to_string(apex.size()));
    if (dir.squaredNorm() > Scalar(0)) directions.push_back(dir);
  }
};

using ConeGenerators = ConeGeneratorsT<double>;

namespace detail {

/// Phase-1 simplex: minimum of |A a - b|_1 over a >= 0, where the columns of
/// A are `cols`. Returns the optimal objective. Bland's rule, so no cycling.
template <class Scalar>
Scalar phase1_residual(const std::vector<PointT<Scalar>>& cols, const PointT<Scalar>& b) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int d = static_cast<int>(b.size());
  const int m = static_cast<int>(cols.size());
  const int nvar = m + d;
  // Rows 0..d-1 are constraints, row d is the reduced-cost row.
  // Column nvar is the right-hand side.
  Mat t = Mat::Zero(d + 1, nvar + 1);
  for (int i = 0; i < d; ++i) {
    const Scalar sign = b[i] < Scalar(0) ? Scalar(-1) : Scalar(1);
    for (int j = 0; j < m; ++j) t(i, j) = sign * cols[j][i];
    t(i, m + i) = Scalar(1);
    t(i, nvar) = sign * b[i];
  }
  for (int j = 0; j < m; ++j) t(d, j) = -t.col(j).head(d).sum();
  t(d, nvar) = -t.col(nvar).head(d).sum();

  std::vector<int> basis(d);
  for (int i = 0; i < d; ++i) basis[i] = m + i;

  const Scalar eps = Scalar(64) * std::numeric_limits<Scalar>::epsilon();
  for (int iter = 0; iter < 50 * (nvar + d); ++iter) {
    int enter = -1;
    for (int j = 0; j < nvar; ++j) {
      if (t(d, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    Scalar best = std::numeric_limits<Scalar>::infinity();
    for (int i = 0; i < d; ++i) {
      if (t(i, enter) > eps) {
        const Scalar ratio = t(i, nvar) / t(i, enter);
        const bool tie = leave >= 0 && std::abs(ratio - best) <= eps;
        if (leave < 0 || ratio < best - eps || (tie && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen for phase 1
    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= d; ++i) {
      if (i != leave && t(i, enter) != Scalar(0)) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[leave] = enter;
  }
  return std::max(Scalar(0), -t(d, nvar));
}

template <class Scalar>
Scalar wrap_angle(Scalar a) {
  const Scalar two_pi = Scalar(kTwoPi);
  a = std::fmod(a, two_pi);
  if (a < Scalar(0)) a += two_pi;
  if (a >= two_pi) a -= two_pi;
  return a;
}

}  // namespace detail

/// True iff `direction` is a nonnegative combination of the cone directions,
/// up to an L1 residual `tol` after normalising every vector to unit length.
/// The zero direction is always contained.
template <class Scalar>
bool cone_contains(const PointT<Scalar>& direction, const ConeGeneratorsT<Scalar>& gens,
                   Scalar tol = Scalar(kDefaultConeTol)) {
  if (direction.size() != gens.apex.size())
    throw InvalidInput("direction has dimension " + std::to_string(direction.size()) +
                       ", cone has " + std::to_string(gens.apex.size()));
  if (!(tol > Scalar(0))) throw InvalidInput("cone tolerance must be positive");
  if (!direction.allFinite()) throw InvalidInput("direction must be finite");
  const Scalar n = direction.norm();
  if (n == Scalar(0)) return true;
  if (gens.directions.empty()) return false;
  std::vector<PointT<Scalar>> cols;
  cols.reserve(gens.directions.size());
  for (const auto& g : gens.directions) {
    if (g.size() != direction.size()) throw InvalidInput("cone direction dimension mismatch");
    cols.push_back(g / g.norm());
  }
  const PointT<Scalar> v = direction / n;
  return detail::phase1_residual<Scalar>(cols, v) <= tol;
}

/// The cone at `x` that the next increment must avoid: generated by the history
/// points plus the origin (origin mode), or by the history points plus the
/// ray -ell (homogeneous mode).
template <class Scalar>
ConeGeneratorsT<Scalar> constraint_cone(const PointT<Scalar>& x,
                                        std::span<const PointT<Scalar>> history,
                                        const ConstraintModeT<Scalar>& mode) {
  ConeGeneratorsT<Scalar> gens(x);
  gens.directions.reserve(history.size() + 1);
  for (const auto& h : history) gens.add_point(h);
  if (const auto* hom = std::get_if<HomogeneousModeT<Scalar>>(&mode)) {
    if (hom->ell.size() != x.size()) throw InvalidInput("ell dimension mismatch");
    if (std::abs(hom->ell.norm() - Scalar(1)) > Scalar(1e-9))
      throw InvalidInput("ell must be a unit vector");
    gens.add_direction(-hom->ell);
  } else {
    gens.add_point(PointT<Scalar>::Zero(x.size()));
  }
  return gens;
}

/// Membership of y in the admissible region at x (interior convention; points
/// within `tol` of the region boundary may be classified either way).
template <class Scalar>
bool admissible_point(const PointT<Scalar>& y, const PointT<Scalar>& x,
                      std::span<const PointT<Scalar>> history,
                      const ConstraintModeT<Scalar>& mode,
                      Scalar tol = Scalar(kDefaultConeTol)) {
  if (y.size() != x.size()) throw InvalidInput("y and x have different dimensions");
  const PointT<Scalar> step = y - x;
  if (step.norm() > Scalar(1) + tol) return false;
  return !cone_contains<Scalar>(step, constraint_cone<Scalar>(x, history, mode), tol);
}

/// Angular arc {start + t mod 2pi : 0 <= t <= width}.
template <class Scalar>
struct ArcT {
  Scalar start = 0;
  Scalar width = Scalar(kTwoPi);

  /// Interior angle of the hull at the current point, in [0, pi].
  Scalar interior_angle() const { return Scalar(kTwoPi) - width; }

  /// Area of the unit-disk sector spanned by the arc.
  Scalar sector_area() const { return width / Scalar(2); }

  bool contains(Scalar angle) const {
    return detail::wrap_angle(angle - start) <= width;
  }

  /// Angular distance from `angle` to the nearest arc endpoint.
  Scalar endpoint_distance(Scalar angle) const {
    auto dist = [](Scalar a, Scalar b) {
      const Scalar t = detail::wrap_angle(a - b);
      return std::min(t, Scalar(kTwoPi) - t);
    };
    return std::min(dist(angle, start), dist(angle, start + width));
  }
};

using Arc = ArcT<double>;

/// Complement of the minimal enclosing arc of a set of direction angles.
/// Throws DegenerateConfiguration if the directions do not fit in a closed
/// half-plane.
template <class Scalar>
ArcT<Scalar> complement_of_enclosing_arc(std::vector<Scalar>& angles) {
  if (angles.empty()) return ArcT<Scalar>{Scalar(0), Scalar(kTwoPi)};
  for (auto& a : angles) a = detail::wrap_angle(a);
  std::sort(angles.begin(), angles.end());
  const std::size_t m = angles.size();
  Scalar best_gap = -1;
  std::size_t best = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Scalar next = (i + 1 < m) ? angles[i + 1] : angles[0] + Scalar(kTwoPi);
    const Scalar gap = next - angles[i];
    if (gap > best_gap) {
      best_gap = gap;
      best = i;
    }
  }
  if (Scalar(kTwoPi) - best_gap > Scalar(kPi) + Scalar(1e-9))
    throw DegenerateConfiguration("cone directions span more than a half-plane");
  return ArcT<Scalar>{angles[best], std::min(best_gap, Scalar(kTwoPi))};
}

/// Admissible directions at x in the plane, as an arc of the unit circle.
template <class Scalar>
ArcT<Scalar> admissible_sector_2d(const PointT<Scalar>& x,
                                  std::span<const PointT<Scalar>> history,
                                  const ConstraintModeT<Scalar>& mode) {
  if (x.size() != 2)
    throw UnsupportedDimension("admissible_sector_2d needs d = 2, got d = " +
                               std::to_string(x.size()));
  const auto gens = constraint_cone<Scalar>(x, history, mode);
  std::vector<Scalar> angles;
  angles.reserve(gens.directions.size());
  for (const auto& dir : gens.directions) angles.push_back(std::atan2(dir[1], dir[0]));
  return complement_of_enclosing_arc(angles);
}

}  // namespace hullwalk
