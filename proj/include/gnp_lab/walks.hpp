// Copyright 2026 The gnp_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gnp_lab/rng.hpp"

namespace gnp_lab {

/// Walk with i.i.d. Bin(m, p) - 1 increments, p = (1 - epsilon) / m.
struct WalkParams {
  std::uint64_t m = 1;
  double epsilon = 0.5;
  double p = 0.5;

  /// Throws std::invalid_argument unless m >= 1 and 0 < epsilon < 1.
  static WalkParams make(std::uint64_t m, double epsilon);
};

/// First t with W_t = 0 where W_0 = 1, or std::nullopt when the walk is
/// still positive after `cap` steps (censored).
std::optional<std::uint64_t> simulate_tau(const WalkParams& params, RngStream& stream,
                                          std::uint64_t cap);

/// P(tau = t) = P(W_t = 0) / t, with P(W_t = 0) = P(Bin(mt, p) = t - 1).
double tau_pmf_exact(std::uint64_t t, const WalkParams& params);

/// Exact pmf and survival table of tau on 1..t_max.
struct TauDistribution {
  WalkParams params;
  std::vector<double> pmf;   // pmf[t - 1] = P(tau = t)
  std::vector<double> tail;  // tail[T - 1] = P(tau >= T)
  double truncation_mass = 0.0;

  std::uint64_t t_max() const { return pmf.size(); }
  double pmf_at(std::uint64_t t) const { return pmf.at(t - 1); }
  double tail_at(std::uint64_t t) const { return tail.at(t - 1); }
};

/// ceil(20 / epsilon^2).
std::uint64_t default_tau_horizon(double epsilon);

/// Builds the table by suffix summation; t_max == 0 selects
/// default_tau_horizon(params.epsilon).
TauDistribution tau_distribution(const WalkParams& params, std::uint64_t t_max = 0);

/// Index j of the unique rotation of `seq` whose proper partial sums are all
/// nonnegative. Entries must be >= -1 and sum to -1.
///
/// Every rotation is checked; std::invalid_argument is thrown for a bad
/// input and std::logic_error if zero or several rotations qualify.
std::size_t spitzer_unique_rotation(std::span<const std::int64_t> seq);

/// Number of rotations of `seq` whose proper partial sums stay nonnegative.
std::size_t count_qualifying_rotations(std::span<const std::int64_t> seq);

/// q = (1 - eps) (1 + 1/(m-1))^m (1 - (1-eps)/m)^(m-1), evaluated in log
/// space. Requires m >= 2.
double q_value(const WalkParams& params);

/// Decay-rate fits of a survival curve P(tau >= T) over a grid of T.
struct TailRateFit {
  /// Least-squares slope of ln P(tau >= T) against T.
  double raw_slope = 0.0;
  /// Slope of ln P(tau >= T) + 1.5 ln T against T: the exponential rate once
  /// the T^{-3/2} prefactor of the hitting-time tail is divided out.
  double rate_slope = 0.0;
  std::size_t points = 0;
};

/// Points with a nonpositive tail are skipped. Throws std::invalid_argument
/// if fewer than two usable points remain.
TailRateFit fit_tail_rate(std::span<const double> horizon, std::span<const double> tail);

}  // namespace gnp_lab
