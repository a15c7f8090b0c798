// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>

namespace hullwalk {

namespace detail {

struct KronrodEstimate {
  double value;
  double error;
};

// Gauss-Kronrod 7/15 rule on [a, b].
template <class F>
KronrodEstimate gauss_kronrod_15(F&& f, double a, double b) {
  static constexpr std::array<double, 8> xgk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.0};
  static constexpr std::array<double, 8> wgk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = wgk[7] * fc;
  double gauss = wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * xgk[i];
    const double pair = f(c - dx) + f(c + dx);
    kronrod += wgk[i] * pair;
    if (i % 2 == 1) gauss += wg[i / 2] * pair;
  }
  return {kronrod * h, std::abs((kronrod - gauss) * h)};
}

template <class F>
double adaptive_integrate(F& f, double a, double b, double tol, int depth) {
  const KronrodEstimate whole = gauss_kronrod_15(f, a, b);
  if (whole.error <= tol || depth <= 0) return whole.value;
  const double m = 0.5 * (a + b);
  return adaptive_integrate(f, a, m, 0.5 * tol, depth - 1) +
         adaptive_integrate(f, m, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b] to absolute tolerance
/// `tol` (bisection on the G7/K15 error estimate).
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12) {
  if (a == b) return 0.0;
  return detail::adaptive_integrate(f, a, b, tol, 40);
}

}  // namespace hullwalk
