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

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gnp_lab/stats.hpp"
#include "gnp_lab/walks.hpp"

using namespace gnp_lab;

TEST_CASE("WalkParams::make derives p and validates") {
  const auto params = WalkParams::make(10, 0.2);
  CHECK(params.p == doctest::Approx(0.08));
  CHECK_THROWS_AS(WalkParams::make(10, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(WalkParams::make(10, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(WalkParams::make(0, 0.5), std::invalid_argument);
}

TEST_CASE("a first step of -1 stops the walk at time 1") {
  // m = 1, eps close to 1: the step is -1 almost surely.
  const auto params = WalkParams::make(1, 0.999999);
  RngStream stream = derive_stream(3, 0);
  int ones = 0;
  for (int i = 0; i < 1000; ++i) ones += simulate_tau(params, stream, 100) == 1u ? 1 : 0;
  CHECK(ones >= 998);
}

TEST_CASE("exact hitting-time law for m=2, eps=0.5") {
  const auto params = WalkParams::make(2, 0.5);
  CHECK(params.p == 0.25);
  CHECK(tau_pmf_exact(1, params) == doctest::Approx(0.5625).epsilon(1e-13));
  CHECK(tau_pmf_exact(2, params) == doctest::Approx(0.2109375).epsilon(1e-13));

  const auto dist = tau_distribution(params, 200);
  CHECK(dist.t_max() == 200);
  CHECK(dist.tail_at(1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(dist.tail_at(2) == doctest::Approx(0.4375).epsilon(1e-12));
  CHECK(dist.pmf_at(1) == doctest::Approx(0.5625).epsilon(1e-13));
}

TEST_CASE("simulated P(tau = 1) for m=2, eps=0.5") {
  const auto params = WalkParams::make(2, 0.5);
  RngStream stream = derive_stream(20, 0);
  constexpr int kRuns = 1000000;
  int ones = 0;
  for (int i = 0; i < kRuns; ++i) ones += simulate_tau(params, stream, 1000) == 1u ? 1 : 0;
  const double se = std::sqrt(0.5625 * 0.4375 / kRuns);
  CHECK(std::fabs(static_cast<double>(ones) / kRuns - 0.5625) <= 4.0 * se);
}

TEST_CASE("pmf is a distribution with a monotone tail") {
  const auto params = WalkParams::make(50, 0.2);
  const auto dist = tau_distribution(params);
  CHECK(dist.t_max() == default_tau_horizon(0.2));
  double total = 0.0;
  for (const double v : dist.pmf) {
    CHECK(v >= 0.0);
    total += v;
  }
  CHECK(total >= 0.999);
  CHECK(total <= 1.0 + 1e-12);
  CHECK(dist.truncation_mass == doctest::Approx(1.0 - total).epsilon(1e-9));
  for (std::uint64_t t = 2; t <= dist.t_max(); ++t) CHECK(dist.tail_at(t) <= dist.tail_at(t - 1));
  CHECK(dist.tail_at(1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exact mean matches Wald's identity") {
  for (const double eps : {0.1, 0.2, 0.5}) {
    const auto dist = tau_distribution(WalkParams::make(100, eps));
    double mean = 0.0;
    for (std::uint64_t t = 1; t <= dist.t_max(); ++t) mean += static_cast<double>(t) * dist.pmf_at(t);
    CAPTURE(eps);
    CHECK(mean == doctest::Approx(1.0 / eps).epsilon(1e-3));
  }
}

TEST_CASE("simulated mean matches Wald's identity") {
  const double eps = 0.2;
  const auto params = WalkParams::make(50, eps);
  RngStream stream = derive_stream(21, 0);
  constexpr int kRuns = 200000;
  std::vector<double> taus;
  taus.reserve(kRuns);
  for (int i = 0; i < kRuns; ++i) {
    const auto tau = simulate_tau(params, stream, 1000000);
    REQUIRE(tau.has_value());
    taus.push_back(static_cast<double>(*tau));
  }
  const auto stats = summarize(taus);
  CHECK(std::fabs(stats.mean - 1.0 / eps) <= 4.0 * stats.std_error);
}

TEST_CASE("simulated tau fits the exact law") {
  const auto params = WalkParams::make(20, 0.3);
  const auto dist = tau_distribution(params, 60);
  std::vector<std::uint64_t> counts(dist.t_max() + 1);
  std::vector<double> probs(dist.pmf);
  probs.push_back(dist.truncation_mass);
  RngStream stream = derive_stream(22, 0);
  for (int i = 0; i < 200000; ++i) {
    const auto tau = simulate_tau(params, stream, dist.t_max());
    ++counts[tau ? *tau - 1 : dist.t_max()];
  }
  CHECK(chi_square_gof(counts, probs).p_value > 0.001);
}

TEST_CASE("censoring returns no value") {
  const auto params = WalkParams::make(1000, 0.01);
  RngStream stream = derive_stream(23, 0);
  int censored = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto tau = simulate_tau(params, stream, 3);
    if (tau) {
      CHECK(*tau <= 3);
    } else {
      ++censored;
    }
  }
  CHECK(censored > 0);
}

TEST_CASE("second moment scales like eps^-3") {
  for (const double eps : {0.05, 0.1, 0.2}) {
    const auto dist = tau_distribution(WalkParams::make(1000, eps));
    double second = 0.0;
    for (std::uint64_t t = 1; t <= dist.t_max(); ++t) {
      second += static_cast<double>(t) * static_cast<double>(t) * dist.pmf_at(t);
    }
    const double scaled = second * eps * eps * eps;
    CAPTURE(eps);
    CHECK(scaled >= 0.1);
    CHECK(scaled <= 100.0);
  }
}

TEST_CASE("spitzer_unique_rotation examples") {
  CHECK(spitzer_unique_rotation(std::vector<std::int64_t>{1, -1, -1}) == 0);
  CHECK(spitzer_unique_rotation(std::vector<std::int64_t>{-1, 1, -1}) == 1);
  CHECK(spitzer_unique_rotation(std::vector<std::int64_t>{-1, -1, 1}) == 2);
  CHECK(spitzer_unique_rotation(std::vector<std::int64_t>{-1}) == 0);
  CHECK(spitzer_unique_rotation(std::vector<std::int64_t>{0, 0, -1}) == 0);
  CHECK(spitzer_unique_rotation(std::vector<std::int64_t>{-1, 2, -1, -1}) == 1);
}

TEST_CASE("spitzer_unique_rotation rejects invalid sequences") {
  CHECK_THROWS_AS(spitzer_unique_rotation(std::vector<std::int64_t>{}), std::invalid_argument);
  CHECK_THROWS_AS(spitzer_unique_rotation(std::vector<std::int64_t>{1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(spitzer_unique_rotation(std::vector<std::int64_t>{2, -2, -1}),
                  std::invalid_argument);
}

TEST_CASE("every valid sequence up to length 7 has exactly one qualifying rotation") {
  std::uint64_t checked = 0;
  std::vector<std::int64_t> seq;
  std::function<void(std::size_t, std::int64_t)> extend = [&](std::size_t length, std::int64_t sum) {
    if (seq.size() == length) {
      if (sum == -1) {
        CHECK(count_qualifying_rotations(seq) == 1);
        ++checked;
      }
      return;
    }
    for (std::int64_t x = -1; x <= 3; ++x) {
      seq.push_back(x);
      extend(length, sum + x);
      seq.pop_back();
    }
  };
  for (std::size_t length = 1; length <= 7; ++length) extend(length, 0);
  CHECK(checked > 1000);
}

TEST_CASE("q approaches (1 - eps) e^eps and 1 - eps^2 / 2") {
  const auto large = WalkParams::make(1000000, 0.1);
  CHECK(std::fabs(q_value(large) - 0.9 * std::exp(0.1)) <= 1e-4);

  const double eps = 0.01;
  const double gap = 1.0 - q_value(WalkParams::make(1000000, eps));
  CHECK(gap > 0.0);
  CHECK(gap / (eps * eps / 2.0) >= 0.1);
  CHECK(gap / (eps * eps / 2.0) <= 10.0);
  for (const double e : {0.05, 0.2, 0.5}) {
    const double q = q_value(WalkParams::make(10000, e));
    CHECK(q > 0.0);
    CHECK(q < 1.0);
  }
}

TEST_CASE("q for m=2, eps=0.5 is exactly 1.5") {
  // 0.5 * 2^2 * 0.75 in long double
  const long double reference = 0.5L * 4.0L * 0.75L;
  CHECK(std::fabs(q_value(WalkParams::make(2, 0.5)) - static_cast<double>(reference)) <= 1e-12);
  CHECK_THROWS_AS(q_value(WalkParams::make(1, 0.5)), std::invalid_argument);
}

TEST_CASE("prefactor-corrected tail slope tracks ln q") {
  const double eps = 0.05;
  const auto params = WalkParams::make(10000, eps);
  const auto dist = tau_distribution(params, static_cast<std::uint64_t>(10.0 / (eps * eps)));
  std::vector<double> horizon;
  std::vector<double> tail;
  for (int k = 2; k <= 10; ++k) {
    const auto t = static_cast<std::uint64_t>(k / (eps * eps));
    horizon.push_back(static_cast<double>(t));
    tail.push_back(dist.tail_at(t));
  }
  const auto fit = fit_tail_rate(horizon, tail);
  CHECK(fit.points == 9);
  const double target = std::log(q_value(params));
  CHECK(fit.rate_slope / target >= 0.75);
  CHECK(fit.rate_slope / target <= 1.25);
  CHECK(fit.raw_slope < fit.rate_slope);
}

TEST_CASE("fit_tail_rate input checks") {
  const std::vector<double> x{1.0, 2.0};
  const std::vector<double> y{0.5};
  CHECK_THROWS_AS(fit_tail_rate(x, y), std::invalid_argument);
  const std::vector<double> zeros{0.0, 0.0};
  CHECK_THROWS_AS(fit_tail_rate(x, zeros), std::invalid_argument);
}
