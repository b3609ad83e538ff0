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

#include "gnp_lab/walks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gnp_lab/binomial.hpp"
#include "gnp_lab/stats.hpp"

namespace gnp_lab {

WalkParams WalkParams::make(std::uint64_t m, double epsilon) {
  if (m == 0) throw std::invalid_argument("walk needs m >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("walk epsilon must lie in (0,1), got " + std::to_string(epsilon));
  }
  return WalkParams{m, epsilon, (1.0 - epsilon) / static_cast<double>(m)};
}

std::optional<std::uint64_t> simulate_tau(const WalkParams& params, RngStream& stream,
                                          std::uint64_t cap) {
  const BinomialSampler step(params.p);
  std::int64_t position = 1;
  for (std::uint64_t t = 1; t <= cap; ++t) {
    position += static_cast<std::int64_t>(step(stream, params.m)) - 1;
    if (position == 0) return t;
  }
  return std::nullopt;
}

double tau_pmf_exact(std::uint64_t t, const WalkParams& params) {
  if (t == 0) return 0.0;
  const BinomialSpec total{params.m * t, params.p};
  return std::exp(log_binom_pmf(static_cast<std::int64_t>(t - 1), total)) /
         static_cast<double>(t);
}

std::uint64_t default_tau_horizon(double epsilon) {
  return static_cast<std::uint64_t>(std::ceil(20.0 / (epsilon * epsilon)));
}

TauDistribution tau_distribution(const WalkParams& params, std::uint64_t t_max) {
  if (t_max == 0) t_max = default_tau_horizon(params.epsilon);
  TauDistribution dist;
  dist.params = params;
  dist.pmf.resize(t_max);
  dist.tail.resize(t_max);
  for (std::uint64_t t = 1; t <= t_max; ++t) dist.pmf[t - 1] = tau_pmf_exact(t, params);

  // Summing from the smallest terms keeps the far tail accurate.
  double suffix = 0.0;
  for (std::uint64_t t = t_max; t >= 1; --t) {
    suffix += dist.pmf[t - 1];
    dist.tail[t - 1] = suffix;
  }
  dist.truncation_mass = std::max(0.0, 1.0 - suffix);
  for (auto& value : dist.tail) value += dist.truncation_mass;
  return dist;
}

namespace {

bool rotation_qualifies(std::span<const std::int64_t> seq, std::size_t start) {
  const std::size_t k = seq.size();
  std::int64_t partial = 0;
  for (std::size_t r = 0; r + 1 < k; ++r) {
    partial += seq[(start + r) % k];
    if (partial < 0) return false;
  }
  return true;
}

void check_rotation_input(std::span<const std::int64_t> seq) {
  if (seq.empty()) throw std::invalid_argument("sequence must be nonempty");
  for (const auto value : seq) {
    if (value < -1) throw std::invalid_argument("entries must be >= -1");
  }
  const std::int64_t total = std::accumulate(seq.begin(), seq.end(), std::int64_t{0});
  if (total != -1) {
    throw std::invalid_argument("sequence must sum to -1, got " + std::to_string(total));
  }
}

}  // namespace

std::size_t count_qualifying_rotations(std::span<const std::int64_t> seq) {
  check_rotation_input(seq);
  std::size_t count = 0;
  for (std::size_t j = 0; j < seq.size(); ++j) count += rotation_qualifies(seq, j) ? 1 : 0;
  return count;
}

std::size_t spitzer_unique_rotation(std::span<const std::int64_t> seq) {
  check_rotation_input(seq);
  std::optional<std::size_t> found;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    if (!rotation_qualifies(seq, j)) continue;
    if (found) {
      throw std::logic_error("rotations " + std::to_string(*found) + " and " +
                             std::to_string(j) + " both qualify");
    }
    found = j;
  }
  if (!found) throw std::logic_error("no rotation qualifies");
  return *found;
}

double q_value(const WalkParams& params) {
  if (params.m < 2) throw std::invalid_argument("q is defined for m >= 2");
  const double m = static_cast<double>(params.m);
  const double eps = params.epsilon;
  const double log_q = std::log1p(-eps) + m * std::log1p(1.0 / (m - 1.0)) +
                       (m - 1.0) * std::log1p(-(1.0 - eps) / m);
  return std::exp(log_q);
}

TailRateFit fit_tail_rate(std::span<const double> horizon, std::span<const double> tail) {
  if (horizon.size() != tail.size()) throw std::invalid_argument("grid and tail differ in length");
  std::vector<double> x;
  std::vector<double> log_tail;
  std::vector<double> log_rate;
  for (std::size_t i = 0; i < horizon.size(); ++i) {
    if (!(tail[i] > 0.0)) continue;
    x.push_back(horizon[i]);
    log_tail.push_back(std::log(tail[i]));
    log_rate.push_back(std::log(tail[i]) + 1.5 * std::log(horizon[i]));
  }
  if (x.size() < 2) throw std::invalid_argument("tail fit needs two points with positive mass");
  return TailRateFit{least_squares_slope(x, log_tail), least_squares_slope(x, log_rate),
                     x.size()};
}

}  // namespace gnp_lab
