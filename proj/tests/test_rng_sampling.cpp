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
#include <limits>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "gnp_lab/binomial.hpp"
#include "gnp_lab/rng.hpp"
#include "gnp_lab/stats.hpp"

using namespace gnp_lab;

namespace {

// Exact C(N,k) for N <= 60 by Pascal's rule; fits in 64 bits.
std::vector<std::vector<std::uint64_t>> pascal(std::size_t rows) {
  std::vector<std::vector<std::uint64_t>> c(rows + 1);
  for (std::size_t n = 0; n <= rows; ++n) {
    c[n].assign(n + 1, 1);
    for (std::size_t k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
  }
  return c;
}

// ln pmf in 50-digit arithmetic; independent of the saddle-point route.
double reference_log_pmf(std::uint64_t k, std::uint64_t n, double p) {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big bn = n;
  const Big bk = k;
  const Big bp = p;
  const Big one = 1;
  const Big value = boost::math::lgamma(bn + 1) - boost::math::lgamma(bk + 1) -
                    boost::math::lgamma(bn - bk + 1) + bk * log(bp) + (bn - bk) * log(one - bp);
  return static_cast<double>(value);
}

std::vector<double> exact_pmf(std::uint64_t trials, double p) {
  std::vector<double> probs(trials + 1);
  for (std::uint64_t k = 0; k <= trials; ++k) {
    probs[k] = std::exp(log_binom_pmf(static_cast<std::int64_t>(k), {trials, p}));
  }
  return probs;
}

}  // namespace

TEST_CASE("derive_stream is deterministic and index-sensitive") {
  RngStream a = derive_stream(42, 0);
  RngStream b = derive_stream(42, 0);
  RngStream c = derive_stream(42, 1);
  bool all_equal = true;
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next();
    all_equal = all_equal && x == b.next();
    differs = differs || x != c.next();
  }
  CHECK(all_equal);
  CHECK(differs);
  CHECK(derive_stream(42, 0).next() != derive_stream(43, 0).next());
}

TEST_CASE("pooled uniforms from 100 streams pass chi-square at 0.001") {
  constexpr int kBins = 100;
  std::vector<std::uint64_t> counts(kBins);
  for (std::uint64_t k = 0; k < 100; ++k) {
    RngStream stream = derive_stream(42, k);
    for (int i = 0; i < 1000; ++i) ++counts[static_cast<int>(stream.uniform01() * kBins)];
  }
  const std::vector<double> probs(kBins, 1.0 / kBins);
  CHECK(chi_square_gof(counts, probs).p_value > 0.001);
}

TEST_CASE("neighbouring streams are uncorrelated") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    RngStream x = derive_stream(7, k);
    RngStream y = derive_stream(7, k + 1);
    constexpr int kDraws = 100000;
    double sxy = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (int i = 0; i < kDraws; ++i) {
      const double u = x.uniform01();
      const double v = y.uniform01();
      sx += u;
      sy += v;
      sxy += u * v;
      sxx += u * u;
      syy += v * v;
    }
    const double n = kDraws;
    const double r = (sxy - sx * sy / n) / std::sqrt((sxx - sx * sx / n) * (syy - sy * sy / n));
    // 4.5 standard errors of a null correlation
    CHECK(std::fabs(r) < 4.5 / std::sqrt(n));
  }
}

TEST_CASE("uniform_positive never returns zero") {
  RngStream stream = derive_stream(1, 1);
  for (int i = 0; i < 100000; ++i) {
    const double u = stream.uniform_positive();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
  }
}

TEST_CASE("log_binom_pmf small cases") {
  CHECK(log_binom_pmf(0, {5, 0.5}) == doctest::Approx(std::log(1.0 / 32.0)).epsilon(1e-14));
  CHECK(log_binom_pmf(0, {5, 0.5}) == doctest::Approx(-3.4657359027997265).epsilon(1e-14));
  CHECK(log_binom_pmf(1, {4, 0.25}) == doctest::Approx(std::log(0.421875)).epsilon(1e-14));
  CHECK(log_binom_pmf(6, {5, 0.3}) == -std::numeric_limits<double>::infinity());
  CHECK(log_binom_pmf(-1, {5, 0.3}) == -std::numeric_limits<double>::infinity());
  CHECK(log_binom_pmf(0, {5, 0.0}) == 0.0);
  CHECK(log_binom_pmf(1, {5, 0.0}) == -std::numeric_limits<double>::infinity());
  CHECK(log_binom_pmf(5, {5, 1.0}) == 0.0);
  CHECK(log_binom_pmf(4, {5, 1.0}) == -std::numeric_limits<double>::infinity());
  CHECK(log_binom_pmf(0, {0, 0.4}) == 0.0);
}

TEST_CASE("log_binom_pmf matches exact rational arithmetic for N <= 60") {
  const auto choose = pascal(60);
  double worst = 0.0;
  for (std::uint64_t n = 1; n <= 60; ++n) {
    for (const double p : {0.01, 0.25, 0.3, 0.5, 0.77, 0.999}) {
      for (std::uint64_t k = 0; k <= n; ++k) {
        const long double exact = static_cast<long double>(choose[n][k]) *
                                  std::pow(static_cast<long double>(p), static_cast<long double>(k)) *
                                  std::pow(1.0L - static_cast<long double>(p),
                                           static_cast<long double>(n - k));
        if (exact < 1e-280L) continue;
        const double got = std::exp(log_binom_pmf(static_cast<std::int64_t>(k), {n, p}));
        worst = std::max(worst, static_cast<double>(std::fabs(got / exact - 1.0L)));
      }
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("log_binom_pmf keeps relative accuracy up to N = 1e9") {
  struct Case {
    std::uint64_t k;
    std::uint64_t n;
    double p;
  };
  const Case cases[] = {{1000000000ULL / 3, 1000000000ULL, 1.0 / 3.0},
                        {1, 1000000000ULL, 1e-9},
                        {3, 1000000000ULL, 1e-9},
                        {999, 1000000, 0.001},
                        {12345, 1000000000ULL, 1.2e-5},
                        {499999000, 1000000000ULL, 0.5},
                        {7, 123456789, 5e-8}};
  for (const auto& c : cases) {
    const double reference = reference_log_pmf(c.k, c.n, c.p);
    const double got = log_binom_pmf(static_cast<std::int64_t>(c.k), {c.n, c.p});
    // Relative pmf error = |exp(got - reference) - 1| ~ |got - reference|.
    CAPTURE(c.n);
    CAPTURE(c.k);
    CHECK(std::fabs(got - reference) <= 1e-12);
  }
}

TEST_CASE("pmf sums to one for N <= 200") {
  for (std::uint64_t n = 0; n <= 200; n += (n < 20 ? 1 : 17)) {
    for (const double p : {0.0, 0.001, 0.1, 0.5, 0.63, 0.99, 1.0}) {
      double total = 0.0;
      for (const double v : exact_pmf(n, p)) total += v;
      CAPTURE(n);
      CAPTURE(p);
      CHECK(std::fabs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("sample_binomial degenerate cases") {
  RngStream stream = derive_stream(3, 0);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_binomial(stream, {5, 0.0}) == 0);
    CHECK(sample_binomial(stream, {5, 1.0}) == 5);
    CHECK(sample_binomial(stream, {0, 0.5}) == 0);
  }
}

TEST_CASE("sample_binomial N=20 p=0.1 fits the exact pmf") {
  RngStream stream = derive_stream(2024, 0);
  std::vector<std::uint64_t> counts(21);
  for (int i = 0; i < 100000; ++i) ++counts[sample_binomial(stream, {20, 0.1})];
  CHECK(chi_square_gof(counts, exact_pmf(20, 0.1)).p_value > 0.001);
}

TEST_CASE("sampler agrees with pmf across both sampling paths") {
  std::uint64_t index = 0;
  for (const std::uint64_t n : {1, 5, 50, 500}) {
    for (const double p : {0.01, 0.3, 0.9}) {
      RngStream stream = derive_stream(99, index++);
      std::vector<std::uint64_t> counts(n + 1);
      double sum = 0.0;
      constexpr int kDraws = 100000;
      for (int i = 0; i < kDraws; ++i) {
        const auto draw = sample_binomial(stream, {n, p});
        REQUIRE(draw <= n);
        ++counts[draw];
        sum += static_cast<double>(draw);
      }
      CAPTURE(n);
      CAPTURE(p);
      const auto fit = chi_square_gof(counts, exact_pmf(n, p));
      CHECK(fit.p_value > 0.001);
      const double mean = static_cast<double>(n) * p;
      const double se = std::sqrt(static_cast<double>(n) * p * (1.0 - p) / kDraws);
      CHECK(std::fabs(sum / kDraws - mean) <= 4.0 * se);
    }
  }
}

TEST_CASE("large-N draws have the right mean on the inversion path") {
  RngStream stream = derive_stream(5, 5);
  const BinomialSpec spec{1000000000ULL, 3e-5};  // mean 30000
  constexpr int kDraws = 20000;
  double sum = 0.0;
  for (int i = 0; i < kDraws; ++i) sum += static_cast<double>(sample_binomial(stream, spec));
  const double mean = 1e9 * 3e-5;
  const double se = std::sqrt(mean * (1.0 - 3e-5) / kDraws);
  CHECK(std::fabs(sum / kDraws - mean) <= 4.0 * se);
}

TEST_CASE("BinomialSampler reproduces sample_binomial draw for draw") {
  const BinomialSampler sampler(0.37);
  RngStream a = derive_stream(8, 8);
  RngStream b = derive_stream(8, 8);
  for (std::uint64_t n = 0; n < 300; ++n) CHECK(sampler(a, n) == sample_binomial(b, {n, 0.37}));
}

TEST_CASE("invalid success probability is rejected") {
  CHECK_THROWS_AS(BinomialSpec({3, 1.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(BinomialSampler(-0.1), std::invalid_argument);
}
