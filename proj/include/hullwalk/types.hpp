// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <type_traits>
#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <vector>

namespace hullwalk {

/// Largest supported ambient dimension. Points live on the stack.
inline constexpr int kMaxDim = 8;

template <class Scalar>
using PointT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

using Point = PointT<double>;
using PointList = std::vector<Point>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Error taxonomy. The CLI maps ValidationError to exit code 2 and every
// other hullwalk::Error to exit code 3.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class SamplerStall : public Error {
 public:
  using Error::Error;
};

class SplitSamplerError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamples : public Error {
 public:
  using Error::Error;
};

/// make_point<S>({...}); the scalar type is never deduced, so integer
/// literals give a double point.
template <class Scalar>
PointT<Scalar> make_point(std::initializer_list<std::type_identity_t<Scalar>> coords) {
  PointT<Scalar> p(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (Scalar c : coords) p[i++] = c;
  return p;
}

inline Point make_point(std::initializer_list<double> coords) {
  return make_point<double>(coords);
}

/// x / |x|, with the convention that the zero vector maps to itself.
template <class Derived>
PointT<typename Derived::Scalar> unit_or_zero(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Scalar n = x.norm();
  if (n == Scalar(0)) return PointT<Scalar>::Zero(x.size());
  return x / n;
}

}  // namespace hullwalk
