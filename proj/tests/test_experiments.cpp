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
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "gnp_lab/experiments.hpp"
#include "gnp_lab/report_io.hpp"

using namespace gnp_lab;

namespace {

ExperimentConfig make(ExperimentKind kind, std::uint64_t n, std::uint64_t replicas,
                      std::uint64_t seed = 1) {
  ExperimentConfig config;
  config.kind = kind;
  config.n = n;
  config.replicas = replicas;
  config.master_seed = seed;
  return config;
}

std::string field_of(const ExperimentConfig& config) {
  try {
    config.validate();
  } catch (const ConfigError& error) {
    return error.field();
  }
  return "";
}

}  // namespace

TEST_CASE("experiment kind names round trip") {
  for (const auto kind :
       {ExperimentKind::kSubcritical, ExperimentKind::kSupercritical, ExperimentKind::kWindow,
        ExperimentKind::kMomentAudit, ExperimentKind::kTailAudit, ExperimentKind::kNeutralAudit}) {
    CHECK(parse_experiment_kind(to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_experiment_kind("hypercritical"), std::invalid_argument);
}

TEST_CASE("validate names the offending field") {
  auto config = make(ExperimentKind::kSupercritical, 1000, 10);
  CHECK(field_of(config) == "epsilon");
  config.epsilon = 0.1;
  CHECK(field_of(config).empty());
  config.p = 0.001;
  CHECK(field_of(config) == "p");
  config.p.reset();
  config.replicas = 0;
  CHECK(field_of(config) == "replicas");
  config.replicas = 1;
  config.ell = 0;
  CHECK(field_of(config) == "ell");

  auto window = make(ExperimentKind::kWindow, 1000, 10);
  CHECK(field_of(window) == "lambda");

  auto tail = make(ExperimentKind::kTailAudit, 0, 10);
  tail.epsilon = 1.0;
  CHECK(field_of(tail) == "epsilon");

  auto neutral = make(ExperimentKind::kNeutralAudit, 1000, 10);
  neutral.p = 0.003;
  CHECK(field_of(neutral) == "p");
  neutral.p = 0.002;
  CHECK(field_of(neutral).empty());
  neutral.n = 100;
  neutral.p = 0.02;
  CHECK(field_of(neutral) == "grid");

  auto moment = make(ExperimentKind::kMomentAudit, 1000, 10);
  moment.epsilon = 0.1;
  moment.grid = {1, 301};
  CHECK(field_of(moment) == "grid");
}

TEST_CASE("regime warnings") {
  auto config = make(ExperimentKind::kSupercritical, 1000, 10);
  config.epsilon = 0.2;  // eps n^{1/3} = 2, n eps^3 = 8
  auto warnings = config.warnings();
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("n^(1/3)") != std::string::npos);

  config.n = 1000000;
  config.epsilon = 0.05;  // eps n^{1/3} = 5, n eps^3 = 125
  CHECK(config.warnings().empty());

  config.n = 1000;
  config.epsilon = 0.05;  // n eps^3 = 0.125
  CHECK(config.warnings().size() == 2);
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("resolved grids") {
  auto moment = make(ExperimentKind::kMomentAudit, 100000, 1);
  moment.epsilon = 0.05;
  CHECK(moment.resolved_grid() == std::vector<std::uint64_t>{1, 2500, 5000, 10000});
  auto tail = make(ExperimentKind::kTailAudit, 0, 1);
  tail.epsilon = 0.1;
  CHECK(tail.resolved_grid().front() == 200);
  CHECK(tail.resolved_grid().back() == 1000);
  auto neutral = make(ExperimentKind::kNeutralAudit, 1000, 1);
  CHECK(neutral.resolved_grid() == std::vector<std::uint64_t>{1, 10, 25, 50, 100, 200});
}

TEST_CASE("giant fraction solves its fixed point") {
  for (const double eps : {0.01, 0.05, 0.5, 2.0}) {
    const double rho = giant_fraction(eps);
    CHECK(rho == doctest::Approx(1.0 - std::exp(-(1.0 + eps) * rho)).epsilon(1e-10));
    CHECK(rho > 0.0);
  }
  CHECK(giant_fraction(0.05) / 0.1 == doctest::Approx(0.937).epsilon(1e-3));
}

TEST_CASE("small_component_scale sign follows n eps^3") {
  CHECK(small_component_scale(1000, 0.05) < 0.0);
  CHECK(small_component_scale(1000000, 0.05) ==
        doctest::Approx(2.0 / 0.0025 * std::log(125.0)));
}

TEST_CASE("largest_components is bounded and deterministic") {
  CHECK(largest_components(10, 0.0, 3, 1, 0) == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(largest_components(10, 1.0, 3, 1, 0) == std::vector<std::uint64_t>{10});
  const auto a = largest_components(20000, 1.1 / 20000, 5, 9, 4);
  CHECK(a == largest_components(20000, 1.1 / 20000, 5, 9, 4));
  REQUIRE(a.size() == 5);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] <= a[i - 1]);
}

TEST_CASE("reports do not depend on the thread count") {
  auto config = make(ExperimentKind::kSupercritical, 20000, 24, 5);
  config.epsilon = 0.2;
  config.ell = 2;
  const auto single = run_experiment(config);
  config.parallelism = 8;
  const auto parallel = run_experiment(config);
  CHECK(report_to_json(single).dump() == report_to_json(parallel).dump());
  CHECK(report_to_csv(single) == report_to_csv(parallel));
}

TEST_CASE("undefined ratios are NaN and fail their check") {
  auto config = make(ExperimentKind::kSubcritical, 1000, 5);
  config.epsilon = 0.05;
  const auto report = run_experiment(config);
  CHECK(report.warnings.size() == 2);
  for (const double v : report.metric("ratio_C1").values) CHECK(std::isnan(v));
  CHECK_FALSE(report.check("median_ratio_C1").pass);
}

TEST_CASE("neutral audit on the empty graph") {
  auto config = make(ExperimentKind::kNeutralAudit, 1000, 50);
  config.p = 0.0;
  const auto report = run_experiment(config);
  for (const auto& row : report.table.rows) CHECK(row[1] == 0.0);
  CHECK(report.pass());
}

TEST_CASE("neutral audit at p = 1/n passes") {
  auto config = make(ExperimentKind::kNeutralAudit, 10000, 5000, 3);
  config.p = 1.0 / 10000.0;
  const auto report = run_experiment(config);
  CHECK(report.pass());
  CHECK(report.check("frequency@1_minus_binomial_tail").pass);
}

TEST_CASE("window: far above the window concentrates the giant") {
  auto config = make(ExperimentKind::kWindow, 20000, 200, 4);
  config.lambda = 0.0;
  const double critical_cv = run_experiment(config).metric("scaled_C1").stats.cv;
  config.lambda = 20.0;
  const double above_cv = run_experiment(config).metric("scaled_C1").stats.cv;
  CHECK(above_cv < critical_cv);
  CHECK(critical_cv > 0.3);
}

TEST_CASE("small moment audit") {
  auto config = make(ExperimentKind::kMomentAudit, 20000, 2000, 6);
  config.epsilon = 0.1;
  const auto report = run_experiment(config);
  CHECK(report.check("xi@1_closed_form").pass);
  CHECK(report.table.rows.size() == 4);
  for (const auto& check : report.checks) {
    CAPTURE(check.name);
    CHECK(check.pass);
  }
}

TEST_CASE("small tail audit recovers the mean hitting time") {
  auto config = make(ExperimentKind::kTailAudit, 0, 20000, 2);
  config.epsilon = 0.2;
  config.m = 100;
  const auto report = run_experiment(config);
  const auto& tau = report.metric("tau");
  CHECK(std::fabs(tau.stats.mean - 5.0) <= 4.0 * tau.stats.std_error);
  CHECK(report.table.rows.size() == 9);
}
