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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gnp_lab/stats.hpp"

namespace gnp_lab {

inline constexpr std::string_view kVersionTag = "gnp_lab/1.0.0";

enum class ExperimentKind {
  kSubcritical,
  kSupercritical,
  kWindow,
  kMomentAudit,
  kTailAudit,
  kNeutralAudit,
};

std::string_view to_string(ExperimentKind kind);
/// Throws std::invalid_argument for an unknown name.
ExperimentKind parse_experiment_kind(std::string_view name);

/// Raised for an invalid configuration; `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSubcritical;
  std::uint64_t n = 0;
  /// Distance from criticality; subcritical runs use p = (1 - eps)/n, the
  /// supercritical and moment audits p = (1 + eps)/n, the tail audit
  /// p = (1 - eps)/m.
  std::optional<double> epsilon;
  /// Window parameter: p = (1 + lambda n^{-1/3}) / n.
  std::optional<double> lambda;
  /// Direct edge probability (neutral audit only).
  std::optional<double> p;
  std::uint64_t ell = 1;
  std::uint64_t replicas = 100;
  std::uint64_t master_seed = 0;
  unsigned parallelism = 1;
  /// Offspring trials for the tail audit's walk.
  std::uint64_t m = 10000;
  /// Step grid (moment/neutral audits) or horizon grid (tail audit); empty
  /// selects the kind's default grid.
  std::vector<std::uint64_t> grid;
  /// Censoring cap for the tail audit; 0 selects ceil(100 / eps^2).
  std::uint64_t cap = 0;
  /// Overrides for the primary acceptance band.
  std::optional<double> band_low;
  std::optional<double> band_high;

  /// Throws ConfigError naming the first violated field.
  void validate() const;
  /// Regime warnings (valid but outside the asymptotic regime).
  std::vector<std::string> warnings() const;
  /// Edge (or walk step) probability implied by the configuration.
  double edge_probability() const;
  /// Grid after defaults are applied.
  std::vector<std::uint64_t> resolved_grid() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// One per-replica quantity with its summary.
struct Metric {
  std::string name;
  std::vector<double> values;  // indexed by replica; NaN marks "undefined"
  SummaryStats stats;          // over the finite values
  std::optional<double> target;
};

/// A pass/fail check of one statistic against a closed band.
struct Check {
  std::string name;
  double value = 0.0;
  double low = 0.0;
  double high = 0.0;
  bool pass = false;
};

/// Plot-ready columns (x, y, stderr, ...).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::string version{kVersionTag};
  std::vector<std::string> warnings;
  std::vector<Metric> metrics;
  std::vector<Check> checks;
  Table table;

  bool pass() const;
  const Metric& metric(std::string_view name) const;
  const Check& check(std::string_view name) const;
};

/// Largest `count` component sizes of one implicit exploration, descending.
/// The run never stores more than `count` sizes.
std::vector<std::uint64_t> largest_components(std::uint64_t n, double p, std::uint64_t count,
                                              std::uint64_t master_seed,
                                              std::uint64_t replica);

/// Normalizer 2 eps^-2 log(n eps^3); nonpositive when n eps^3 <= 1.
double small_component_scale(std::uint64_t n, double epsilon);

/// Fraction rho of vertices in the giant: rho = 1 - exp(-(1 + eps) rho).
double giant_fraction(double epsilon);

ExperimentReport run_subcritical(const ExperimentConfig& config);
ExperimentReport run_supercritical(const ExperimentConfig& config);
ExperimentReport run_window(const ExperimentConfig& config);
ExperimentReport moment_audit(const ExperimentConfig& config);
ExperimentReport tail_audit(const ExperimentConfig& config);
ExperimentReport neutral_audit(const ExperimentConfig& config);

/// Dispatches on config.kind after validation.
ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace gnp_lab
