// Copyright 2026 The hullwalk Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "hullwalk/types.hpp"

namespace hullwalk {

/// Philox4x32-10 block function (Salmon et al., SC'11).
/// Pure: the output depends only on (counter, key).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

inline PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) {
  constexpr std::uint32_t kMulA = 0xD2511F53u;
  constexpr std::uint32_t kMulB = 0xCD9E8D57u;
  constexpr std::uint32_t kWeylA = 0x9E3779B9u;
  constexpr std::uint32_t kWeylB = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeylA;
      key[1] += kWeylB;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Stream purposes inside one (seed, replica, step) cell.
enum class Lane : std::uint32_t {
  kStep = 0,        // plain walk increments
  kRenewalBit = 1,  // Bernoulli(alpha) splitting bits
  kBallChain = 2,   // uniform draws on the ball chain
  kChain = 3,       // idealized angle chain
  kResidual = 16,   // residual-density proposals; attempt i uses kResidual + i
};

/// Counter-based generator addressed by (seed, replica, step, lane).
///
/// Two generators with the same address produce the same sequence, whatever
/// thread or order they are created in. Draws inside a cell are numbered by an
/// internal 32-bit counter.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t replica, std::uint64_t step,
             std::uint32_t lane = 0)
      : step_(step), lane_(lane) {
    const std::uint64_t k = splitmix64(seed ^ splitmix64(replica + 0x632BE59BD9B4E019ull));
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  }

  CounterRng(std::uint64_t seed, std::uint64_t replica, std::uint64_t step, Lane lane)
      : CounterRng(seed, replica, step, static_cast<std::uint32_t>(lane)) {}

  std::uint64_t next_u64() {
    if (buffered_ == 0) {
      block_ = philox4x32_10({draw_, lane_, static_cast<std::uint32_t>(step_),
                              static_cast<std::uint32_t>(step_ >> 32)},
                             key_);
      ++draw_;
      buffered_ = 2;
    }
    const int base = (2 - buffered_) * 2;
    --buffered_;
    return (static_cast<std::uint64_t>(block_[base + 1]) << 32) | block_[base];
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    // Box-Muller; the second variate is discarded to keep draws position-stable.
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform direction on the unit sphere S^{d-1}.
  Point unit_vector(int d) {
    Point v(d);
    double n2 = 0.0;
    do {
      for (int i = 0; i < d; ++i) v[i] = normal();
      n2 = v.squaredNorm();
    } while (n2 == 0.0);
    return v / std::sqrt(n2);
  }

  /// Uniform point in the closed unit ball B(0;1) in R^d.
  Point in_unit_ball(int d) {
    if (d == 2) {
      const double r = std::sqrt(uniform());
      const double phi = kTwoPi * uniform();
      return make_point({r * std::cos(phi), r * std::sin(phi)});
    }
    Point u = unit_vector(d);
    return u * std::pow(uniform(), 1.0 / d);
  }

  std::uint32_t draws_used() const { return draw_; }

 private:
  PhiloxKey key_{};
  std::uint64_t step_;
  std::uint32_t lane_;
  std::uint32_t draw_ = 0;
  PhiloxCounter block_{};
  int buffered_ = 0;
};

}  // namespace hullwalk
