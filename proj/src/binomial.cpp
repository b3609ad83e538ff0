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

#include "gnp_lab/binomial.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gnp_lab {

void BinomialSpec::validate() const {
  if (!(success_prob >= 0.0 && success_prob <= 1.0)) {
    throw std::invalid_argument("binomial success probability must lie in [0,1], got " +
                                std::to_string(success_prob));
  }
}

namespace detail {

namespace {

std::array<double, 16> small_stirling_errors() {
  std::array<double, 16> table{};
  const long double half_log_2pi = 0.5L * std::log(2.0L * std::numbers::pi_v<long double>);
  for (int n = 1; n < 16; ++n) {
    const long double ln = n;
    table[n] = static_cast<double>(std::lgamma(ln + 1.0L) - (ln + 0.5L) * std::log(ln) + ln -
                                   half_log_2pi);
  }
  return table;
}

}  // namespace

double stirling_error(double n) {
  static const std::array<double, 16> table = small_stirling_errors();
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  if (n < 16.0) return table[static_cast<int>(n)];
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  if (n > 500.0) return (s0 - s1 * inv2) * inv;
  if (n > 80.0) return (s0 - (s1 - s2 * inv2) * inv2) * inv;
  if (n > 35.0) return (s0 - (s1 - (s2 - s3 * inv2) * inv2) * inv2) * inv;
  return (s0 - (s1 - (s2 - (s3 - s4 * inv2) * inv2) * inv2) * inv2) * inv;
}

double deviance_term(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    const double v = (x - np) / (x + np);
    double sum = (x - np) * v;
    double term = 2.0 * x * v;
    const double v2 = v * v;
    for (int j = 1; j < 1000; ++j) {
      term *= v2;
      const double next = sum + term / (2 * j + 1);
      if (next == sum) return next;
      sum = next;
    }
    return sum;
  }
  return x * std::log(x / np) + np - x;
}

}  // namespace detail

double log_binom_pmf(std::int64_t k, const BinomialSpec& spec) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(spec.trials);
  const double p = spec.success_prob;
  if (k < 0 || static_cast<std::uint64_t>(k) > spec.trials) return neg_inf;
  const double x = static_cast<double>(k);
  if (p == 0.0) return k == 0 ? 0.0 : neg_inf;
  if (p == 1.0) return static_cast<std::uint64_t>(k) == spec.trials ? 0.0 : neg_inf;
  if (k == 0) return n * std::log1p(-p);
  if (static_cast<std::uint64_t>(k) == spec.trials) return n * std::log(p);

  const double q = 1.0 - p;
  const double log_core = detail::stirling_error(n) - detail::stirling_error(x) -
                          detail::stirling_error(n - x) - detail::deviance_term(x, n * p) -
                          detail::deviance_term(n - x, n * q);
  const double log_scale =
      std::log(2.0 * std::numbers::pi) + std::log(x) + std::log1p(-x / n);
  return log_core - 0.5 * log_scale;
}

namespace {

// Counts successes among `trials` Bernoulli(p) trials by jumping over the
// failures: each gap is Geometric(p) on {0,1,...}.
std::uint64_t sample_by_skipping(RngStream& stream, std::uint64_t trials, double log_fail) {
  const double limit = static_cast<double>(trials);
  double position = 0.0;  // trials consumed so far
  std::uint64_t successes = 0;
  for (;;) {
    const double gap = std::floor(std::log(stream.uniform_positive()) / log_fail);
    position += gap + 1.0;
    if (position > limit) return successes;
    ++successes;
  }
}

// Inversion with the outcomes ordered mode, mode+1, mode-1, mode+2, ...
// Any fixed ordering of the support gives an exact draw; starting at the
// mode makes the expected search length O(sd).
std::uint64_t sample_by_inversion(RngStream& stream, std::uint64_t trials, double p) {
  const BinomialSpec spec{trials, p};
  const double n = static_cast<double>(trials);
  const double odds = p / (1.0 - p);
  const std::uint64_t mode =
      std::min<std::uint64_t>(trials, static_cast<std::uint64_t>(std::floor((n + 1.0) * p)));
  const double pmf_mode = std::exp(log_binom_pmf(static_cast<std::int64_t>(mode), spec));

  double u = stream.uniform01() - pmf_mode;
  if (u < 0.0) return mode;

  std::uint64_t hi = mode;
  std::uint64_t lo = mode;
  double pmf_hi = pmf_mode;
  double pmf_lo = pmf_mode;
  bool hi_open = mode < trials;
  bool lo_open = mode > 0;
  while (hi_open || lo_open) {
    if (hi_open) {
      pmf_hi *= (n - static_cast<double>(hi)) / static_cast<double>(hi + 1) * odds;
      ++hi;
      u -= pmf_hi;
      if (u < 0.0) return hi;
      hi_open = hi < trials && pmf_hi > 0.0;
    }
    if (lo_open) {
      pmf_lo *= static_cast<double>(lo) / ((n - static_cast<double>(lo) + 1.0) * odds);
      --lo;
      u -= pmf_lo;
      if (u < 0.0) return lo;
      lo_open = lo > 0 && pmf_lo > 0.0;
    }
  }
  // Only reachable through rounding in the accumulated masses (total < 1).
  return mode;
}

}  // namespace

BinomialSampler::BinomialSampler(double success_prob)
    : p_(success_prob),
      small_p_(std::min(success_prob, 1.0 - success_prob)),
      log_fail_(std::log1p(-std::min(success_prob, 1.0 - success_prob))),
      complemented_(success_prob > 0.5) {
  BinomialSpec{0, success_prob}.validate();
}

std::uint64_t BinomialSampler::operator()(RngStream& stream, std::uint64_t trials) const {
  if (trials == 0 || p_ == 0.0) return 0;
  if (p_ == 1.0) return trials;
  std::uint64_t draw = 0;
  if (static_cast<double>(trials) * small_p_ < kSkipSamplingMeanThreshold) {
    draw = sample_by_skipping(stream, trials, log_fail_);
  } else {
    draw = sample_by_inversion(stream, trials, small_p_);
  }
  return complemented_ ? trials - draw : draw;
}

std::uint64_t sample_binomial(RngStream& stream, const BinomialSpec& spec) {
  return BinomialSampler(spec.success_prob)(stream, spec.trials);
}

}  // namespace gnp_lab
