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

#include "gnp_lab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gnp_lab/binomial.hpp"
#include "gnp_lab/exploration.hpp"
#include "gnp_lab/rng.hpp"
#include "gnp_lab/walks.hpp"

namespace gnp_lab {

namespace {

constexpr double kUnbounded = std::numeric_limits<double>::max();
constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

// Runs fn(replica) for every replica. Workers take contiguous, disjoint
// ranges and write only to their own replica slots.
template <class Fn>
void for_each_replica(std::uint64_t replicas, unsigned parallelism, Fn&& fn) {
  const std::uint64_t workers =
      std::clamp<std::uint64_t>(parallelism, 1, std::max<std::uint64_t>(replicas, 1));
  if (workers == 1) {
    for (std::uint64_t r = 0; r < replicas; ++r) fn(r);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    const std::uint64_t chunk = (replicas + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(replicas, w * chunk);
      const std::uint64_t end = std::min(replicas, begin + chunk);
      threads.emplace_back([&, w, begin, end] {
        try {
          for (std::uint64_t r = begin; r < end; ++r) fn(r);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

std::string format_number(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

std::string at_step(std::string_view base, std::uint64_t t) {
  return std::string(base) + "@" + std::to_string(t);
}

Metric make_metric(std::string name, std::vector<double> values,
                   std::optional<double> target = std::nullopt) {
  Metric metric{std::move(name), std::move(values), {}, target};
  std::vector<double> finite;
  finite.reserve(metric.values.size());
  for (const double v : metric.values) {
    if (std::isfinite(v)) finite.push_back(v);
  }
  metric.stats = summarize(finite);
  return metric;
}

Check make_check(std::string name, double value, double low, double high) {
  const bool pass = std::isfinite(value) && value >= low && value <= high;
  return Check{std::move(name), value, low, high, pass};
}

// Applies the configured override to the first (primary) band.
std::pair<double, double> primary_band(const ExperimentConfig& config, double low,
                                       double high) {
  return {config.band_low.value_or(low), config.band_high.value_or(high)};
}

ExperimentReport start_report(const ExperimentConfig& config, ExperimentKind expected) {
  if (config.kind != expected) {
    throw ConfigError("kind", "expected " + std::string(to_string(expected)) + ", got " +
                                  std::string(to_string(config.kind)));
  }
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.warnings = config.warnings();
  return report;
}

double ratio_or_undefined(double value, double scale) {
  return scale > 0.0 ? value / scale : kUndefined;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSubcritical: return "subcritical";
    case ExperimentKind::kSupercritical: return "supercritical";
    case ExperimentKind::kWindow: return "window";
    case ExperimentKind::kMomentAudit: return "moment_audit";
    case ExperimentKind::kTailAudit: return "tail_audit";
    case ExperimentKind::kNeutralAudit: return "neutral_audit";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (const auto kind :
       {ExperimentKind::kSubcritical, ExperimentKind::kSupercritical, ExperimentKind::kWindow,
        ExperimentKind::kMomentAudit, ExperimentKind::kTailAudit,
        ExperimentKind::kNeutralAudit}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown experiment kind '" + std::string(name) + "'");
}

double ExperimentConfig::edge_probability() const {
  const double size = static_cast<double>(n);
  switch (kind) {
    case ExperimentKind::kSubcritical: return (1.0 - epsilon.value_or(0.0)) / size;
    case ExperimentKind::kSupercritical:
    case ExperimentKind::kMomentAudit: return (1.0 + epsilon.value_or(0.0)) / size;
    case ExperimentKind::kWindow:
      return (1.0 + lambda.value_or(0.0) * std::pow(size, -1.0 / 3.0)) / size;
    case ExperimentKind::kTailAudit:
      return (1.0 - epsilon.value_or(0.0)) / static_cast<double>(m);
    case ExperimentKind::kNeutralAudit:
      return p ? *p : (1.0 + epsilon.value_or(0.0)) / size;
  }
  return 0.0;
}

std::vector<std::uint64_t> ExperimentConfig::resolved_grid() const {
  if (!grid.empty()) return grid;
  const double eps = epsilon.value_or(0.0);
  auto round_step = [](double t) {
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(t)));
  };
  switch (kind) {
    case ExperimentKind::kMomentAudit: {
      const double span = eps * static_cast<double>(n);
      return {1, round_step(span / 2.0), round_step(span), round_step(2.0 * span)};
    }
    case ExperimentKind::kTailAudit: {
      std::vector<std::uint64_t> out;
      for (int k = 2; k <= 10; ++k) out.push_back(round_step(k / (eps * eps)));
      return out;
    }
    case ExperimentKind::kNeutralAudit: return {1, 10, 25, 50, 100, 200};
    default: return {};
  }
}

void ExperimentConfig::validate() const {
  if (replicas < 1) throw ConfigError("replicas", "must be at least 1");
  if (parallelism < 1) throw ConfigError("parallelism", "must be at least 1");
  if (ell < 1) throw ConfigError("ell", "component rank must be at least 1");
  if (p && epsilon) throw ConfigError("p", "p and epsilon are mutually exclusive");
  if (lambda && epsilon) throw ConfigError("lambda", "lambda and epsilon are mutually exclusive");
  if (lambda && p) throw ConfigError("lambda", "lambda and p are mutually exclusive");
  if (kind != ExperimentKind::kTailAudit && n < 1) throw ConfigError("n", "must be at least 1");

  auto require_epsilon = [&] {
    if (!epsilon) throw ConfigError("epsilon", "required for " + std::string(to_string(kind)));
    if (!(*epsilon > 0.0)) throw ConfigError("epsilon", "must be positive");
  };
  auto forbid = [&](bool present, const char* field) {
    if (present) {
      throw ConfigError(field, "not used by " + std::string(to_string(kind)) + " experiments");
    }
  };

  switch (kind) {
    case ExperimentKind::kSubcritical:
    case ExperimentKind::kSupercritical:
    case ExperimentKind::kMomentAudit:
      require_epsilon();
      forbid(lambda.has_value(), "lambda");
      forbid(p.has_value(), "p");
      break;
    case ExperimentKind::kWindow:
      if (!lambda) throw ConfigError("lambda", "required for window experiments");
      forbid(epsilon.has_value(), "epsilon");
      forbid(p.has_value(), "p");
      break;
    case ExperimentKind::kTailAudit:
      require_epsilon();
      if (*epsilon >= 1.0) throw ConfigError("epsilon", "must be below 1 for the walk");
      if (m < 1) throw ConfigError("m", "must be at least 1");
      forbid(lambda.has_value(), "lambda");
      forbid(p.has_value(), "p");
      break;
    case ExperimentKind::kNeutralAudit:
      if (!p && !epsilon) throw ConfigError("p", "neutral audit needs p or epsilon");
      forbid(lambda.has_value(), "lambda");
      break;
  }

  const double prob = edge_probability();
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw ConfigError(p ? "p" : (lambda ? "lambda" : "epsilon"),
                      "implied edge probability " + format_number(prob) + " is outside [0,1]");
  }

  const std::vector<std::uint64_t> steps = resolved_grid();
  if (kind == ExperimentKind::kMomentAudit) {
    const double upper = 3.0 * *epsilon * static_cast<double>(n);
    for (const auto t : steps) {
      if (t < 1 || static_cast<double>(t) > upper) {
        throw ConfigError("grid", "step " + std::to_string(t) + " outside [1, 3*eps*n = " +
                                      format_number(upper) + "]");
      }
    }
  }
  if (kind == ExperimentKind::kTailAudit) {
    const double unit = 1.0 / (*epsilon * *epsilon);
    for (const auto t : steps) {
      const auto horizon = static_cast<double>(t);
      if (horizon < std::floor(unit) || horizon > std::ceil(20.0 * unit)) {
        throw ConfigError("grid", "horizon " + std::to_string(t) +
                                      " outside [eps^-2, 20 eps^-2]");
      }
    }
    if (cap != 0 && cap < steps.back()) {
      throw ConfigError("cap", "must be at least the largest grid horizon");
    }
  }
  if (kind == ExperimentKind::kNeutralAudit) {
    if (prob > 2.0 / static_cast<double>(n)) {
      throw ConfigError(p ? "p" : "epsilon", "neutral audit requires p <= 2/n");
    }
    for (const auto t : steps) {
      if (t < 1 || t > n) throw ConfigError("grid", "step " + std::to_string(t) + " outside [1, n]");
    }
  }
}

std::vector<std::string> ExperimentConfig::warnings() const {
  std::vector<std::string> out;
  if ((kind == ExperimentKind::kSubcritical || kind == ExperimentKind::kSupercritical) &&
      epsilon) {
    const double size = static_cast<double>(n);
    const double window_distance = *epsilon * std::cbrt(size);
    if (window_distance < 4.0) {
      out.push_back("regime: eps*n^(1/3) = " + format_number(window_distance) +
                    " < 4, outside the asymptotic regime of the concentration laws");
    }
    if (size * *epsilon * *epsilon * *epsilon <= 1.0) {
      out.push_back("regime: n*eps^3 <= 1, so the 2 eps^-2 log(n eps^3) normalizer is not "
                    "positive and the rank ratios are undefined");
    }
  }
  return out;
}

bool ExperimentReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Metric& ExperimentReport::metric(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.name == name) return m;
  }
  throw std::out_of_range("no metric named " + std::string(name));
}

const Check& ExperimentReport::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no check named " + std::string(name));
}

double small_component_scale(std::uint64_t n, double epsilon) {
  const double size = static_cast<double>(n);
  return 2.0 / (epsilon * epsilon) * std::log(size * epsilon * epsilon * epsilon);
}

double giant_fraction(double epsilon) {
  if (epsilon <= 0.0) return 0.0;
  const double c = 1.0 + epsilon;
  // f(rho) = rho - 1 + exp(-c rho) is negative just above 0 and positive at 1.
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= 0.0 || mid >= 1.0) break;
    const double value = mid - 1.0 + std::exp(-c * mid);
    if (value < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::uint64_t> largest_components(std::uint64_t n, double p, std::uint64_t count,
                                              std::uint64_t master_seed,
                                              std::uint64_t replica) {
  RngStream stream = derive_stream(master_seed, replica);
  const GnpParams params = GnpParams::from_p(n, p);
  // Ascending; top.front() is the smallest kept size.
  std::vector<std::uint64_t> top;
  top.reserve(count + 1);
  std::uint64_t last_record = 0;
  run_exploration(params, stream, [&](const StepState& state, std::uint64_t) {
    if (state.active != 0) return;
    const std::uint64_t size = state.t - last_record;
    last_record = state.t;
    if (top.size() == count && size <= top.front()) return;
    top.insert(std::upper_bound(top.begin(), top.end(), size), size);
    if (top.size() > count) top.erase(top.begin());
  });
  std::reverse(top.begin(), top.end());
  return top;
}

ExperimentReport run_subcritical(const ExperimentConfig& config) {
  ExperimentReport report = start_report(config, ExperimentKind::kSubcritical);
  const double eps = *config.epsilon;
  const double prob = config.edge_probability();
  const double scale = small_component_scale(config.n, eps);
  const std::uint64_t ell = config.ell;

  std::vector<double> sizes(config.replicas);
  for_each_replica(config.replicas, config.parallelism, [&](std::uint64_t r) {
    const auto top = largest_components(config.n, prob, ell, config.master_seed, r);
    sizes[r] = top.size() >= ell ? static_cast<double>(top[ell - 1]) : 0.0;
  });
  std::vector<double> ratios(sizes.size());
  for (std::size_t r = 0; r < sizes.size(); ++r) ratios[r] = ratio_or_undefined(sizes[r], scale);

  const std::string rank = "C" + std::to_string(ell);
  report.metrics.push_back(make_metric("size_" + rank, sizes));
  report.metrics.push_back(make_metric("ratio_" + rank, ratios, 1.0));
  const auto [low, high] = primary_band(config, 0.6, 1.5);
  report.checks.push_back(
      make_check("median_ratio_" + rank, report.metrics.back().stats.median, low, high));
  return report;
}

ExperimentReport run_supercritical(const ExperimentConfig& config) {
  ExperimentReport report = start_report(config, ExperimentKind::kSupercritical);
  const double eps = *config.epsilon;
  const double prob = config.edge_probability();
  const double size = static_cast<double>(config.n);
  const double giant_scale = 2.0 * size * eps;
  const double small_scale = small_component_scale(config.n, eps);
  const std::uint64_t ell = config.ell;

  std::vector<double> giant(config.replicas);
  std::vector<double> ranked(config.replicas);
  for_each_replica(config.replicas, config.parallelism, [&](std::uint64_t r) {
    const auto top = largest_components(config.n, prob, ell, config.master_seed, r);
    giant[r] = static_cast<double>(top.front());
    ranked[r] = top.size() >= ell ? static_cast<double>(top[ell - 1]) : 0.0;
  });

  std::vector<double> giant_ratio(giant.size());
  for (std::size_t r = 0; r < giant.size(); ++r) giant_ratio[r] = giant[r] / giant_scale;
  report.metrics.push_back(make_metric("size_C1", giant));
  report.metrics.push_back(make_metric("ratio_C1", giant_ratio, 1.0));
  const SummaryStats giant_stats = report.metrics.back().stats;

  const auto [low, high] = primary_band(config, 0.85, 1.05);
  report.checks.push_back(make_check("mean_ratio_C1", giant_stats.mean, low, high));
  report.checks.push_back(make_check("cv_ratio_C1", giant_stats.cv, 0.0, 0.1));
  // Finite-eps center of the giant ratio from the fixed point rho = 1 - e^{-(1+eps) rho}.
  report.checks.push_back(
      make_check("fixed_point_center_C1", giant_fraction(eps) / (2.0 * eps), low, high));

  if (ell > 1) {
    std::vector<double> ratio(ranked.size());
    for (std::size_t r = 0; r < ranked.size(); ++r) {
      ratio[r] = ratio_or_undefined(ranked[r], small_scale);
    }
    const std::string rank = "C" + std::to_string(ell);
    report.metrics.push_back(make_metric("size_" + rank, ranked));
    report.metrics.push_back(make_metric("ratio_" + rank, ratio, 1.0));
    report.checks.push_back(
        make_check("median_ratio_" + rank, report.metrics.back().stats.median, 0.4, 1.8));
  }
  return report;
}

ExperimentReport run_window(const ExperimentConfig& config) {
  ExperimentReport report = start_report(config, ExperimentKind::kWindow);
  const double prob = config.edge_probability();
  const double scale = std::pow(static_cast<double>(config.n), 2.0 / 3.0);

  std::vector<double> scaled(config.replicas);
  for_each_replica(config.replicas, config.parallelism, [&](std::uint64_t r) {
    const auto top = largest_components(config.n, prob, 1, config.master_seed, r);
    scaled[r] = static_cast<double>(top.front()) / scale;
  });
  report.metrics.push_back(make_metric("scaled_C1", scaled));
  const SummaryStats& stats = report.metrics.back().stats;
  const auto [low, high] = primary_band(config, 0.3, kUnbounded);
  report.checks.push_back(make_check("cv_scaled_C1", stats.cv, low, high));
  report.checks.push_back(make_check("quantile_ratio_scaled_C1",
                                     stats.q05 > 0.0 ? stats.q95 / stats.q05 : kUnbounded, 3.0,
                                     kUnbounded));
  return report;
}

ExperimentReport moment_audit(const ExperimentConfig& config) {
  ExperimentReport report = start_report(config, ExperimentKind::kMomentAudit);
  const double eps = *config.epsilon;
  const double prob = config.edge_probability();
  const double size = static_cast<double>(config.n);
  const std::vector<std::uint64_t> grid = config.resolved_grid();
  const std::uint64_t horizon = *std::max_element(grid.begin(), grid.end());
  const GnpParams params = GnpParams::from_p(config.n, prob);

  // samples[g][r] for each recorded quantity
  const std::size_t points = grid.size();
  std::vector<std::vector<double>> neutral(points, std::vector<double>(config.replicas));
  std::vector<std::vector<double>> drift(points, std::vector<double>(config.replicas));
  std::vector<std::vector<double>> active(points, std::vector<double>(config.replicas));
  std::vector<std::vector<double>> finished(points, std::vector<double>(config.replicas));

  for_each_replica(config.replicas, config.parallelism, [&](std::uint64_t r) {
    RngStream stream = derive_stream(config.master_seed, r);
    run_exploration(params, stream, [&](const StepState& state, std::uint64_t eta) {
      for (std::size_t g = 0; g < points; ++g) {
        if (grid[g] != state.t) continue;
        neutral[g][r] = static_cast<double>(state.neutral);
        drift[g][r] = static_cast<double>(eta) - 1.0;
        active[g][r] = static_cast<double>(state.active);
        finished[g][r] = static_cast<double>(state.finished_components);
      }
      return state.t < horizon;
    });
  });

  report.table.columns = {"t",       "mean_N",       "se_N",   "predicted_N", "mean_xi",
                          "se_xi",   "predicted_xi", "mean_A", "mean_Z"};
  const double neutral_band = 5.0 * eps * eps * size;
  const double drift_band = 5.0 * eps * eps;
  for (std::size_t g = 0; g < points; ++g) {
    const std::uint64_t t = grid[g];
    const double td = static_cast<double>(t);
    const double predicted_neutral = size * std::pow(1.0 - prob, td);
    const double predicted_drift = eps - td / size;
    const double growth = 20.0 * (eps * td + std::sqrt(td));

    report.metrics.push_back(make_metric(at_step("N", t), neutral[g], predicted_neutral));
    const SummaryStats n_stats = report.metrics.back().stats;
    report.metrics.push_back(make_metric(at_step("xi", t), drift[g], predicted_drift));
    const SummaryStats xi_stats = report.metrics.back().stats;
    report.metrics.push_back(make_metric(at_step("A", t), active[g]));
    const SummaryStats a_stats = report.metrics.back().stats;
    report.metrics.push_back(make_metric(at_step("Z", t), finished[g]));
    const SummaryStats z_stats = report.metrics.back().stats;

    report.checks.push_back(make_check(at_step("N_minus_predictor", t),
                                       n_stats.mean - predicted_neutral, -neutral_band,
                                       neutral_band));
    report.checks.push_back(make_check(at_step("xi_minus_predictor", t),
                                       xi_stats.mean - predicted_drift, -drift_band,
                                       drift_band));
    report.checks.push_back(make_check(at_step("A_growth", t), a_stats.mean, 0.0, growth));
    report.checks.push_back(make_check(at_step("Z_growth", t), z_stats.mean, 0.0, growth));
    if (t == 1) {
      // xi_1 = Bin(n-1, p) - 1 exactly.
      const double exact = prob * (size - 1.0) - 1.0;
      const double band = 4.0 * xi_stats.std_error;
      report.checks.push_back(make_check("xi@1_closed_form", xi_stats.mean - exact, -band, band));
    }
    if (td >= 2.0 * eps * size) {
      report.checks.push_back(
          make_check(at_step("xi_negative", t), xi_stats.mean, -kUnbounded, 0.0));
    }
    report.table.rows.push_back({td, n_stats.mean, n_stats.std_error, predicted_neutral,
                                 xi_stats.mean, xi_stats.std_error, predicted_drift,
                                 a_stats.mean, z_stats.mean});
  }
  return report;
}

ExperimentReport tail_audit(const ExperimentConfig& config) {
  ExperimentReport report = start_report(config, ExperimentKind::kTailAudit);
  const double eps = *config.epsilon;
  const WalkParams walk = WalkParams::make(config.m, eps);
  std::vector<std::uint64_t> grid = config.resolved_grid();
  std::sort(grid.begin(), grid.end());
  const std::uint64_t cap = config.cap != 0
                                ? config.cap
                                : static_cast<std::uint64_t>(std::ceil(100.0 / (eps * eps)));

  std::vector<double> hitting(config.replicas);
  for_each_replica(config.replicas, config.parallelism, [&](std::uint64_t r) {
    RngStream stream = derive_stream(config.master_seed, r);
    const auto tau = simulate_tau(walk, stream, cap);
    hitting[r] = tau ? static_cast<double>(*tau) : kUndefined;
  });
  report.metrics.push_back(make_metric("tau", hitting, 1.0 / eps));

  const TauDistribution exact = tau_distribution(walk, grid.back());
  const double replicas = static_cast<double>(config.replicas);
  report.table.columns = {"T", "empirical_tail", "stderr", "exact_tail", "count"};
  std::vector<double> horizons;
  std::vector<double> tails;
  double worst_z = 0.0;
  std::uint64_t last_count = 0;
  for (const auto horizon : grid) {
    std::uint64_t count = 0;
    for (const double tau : hitting) {
      // Censored runs (NaN) survived past cap >= horizon.
      if (!std::isfinite(tau) || tau >= static_cast<double>(horizon)) ++count;
    }
    const double tail = static_cast<double>(count) / replicas;
    const double expected = exact.tail_at(horizon);
    const double se = std::sqrt(std::max(expected * (1.0 - expected), 1e-300) / replicas);
    worst_z = std::max(worst_z, std::fabs(tail - expected) / se);
    horizons.push_back(static_cast<double>(horizon));
    tails.push_back(tail);
    last_count = count;
    report.table.rows.push_back({static_cast<double>(horizon), tail,
                                 std::sqrt(tail * (1.0 - tail) / replicas), expected,
                                 static_cast<double>(count)});
  }
  if (last_count < 10) {
    report.warnings.push_back("tail: only " + std::to_string(last_count) +
                              " runs survive to the largest horizon; slope is noisy");
  }

  const double target = -eps * eps / 2.0;
  double relative = kUndefined;
  try {
    const TailRateFit fit = fit_tail_rate(horizons, tails);
    relative = fit.rate_slope / target;
  } catch (const std::invalid_argument& e) {
    report.warnings.push_back(std::string("tail: ") + e.what());
  }
  const auto [low, high] = primary_band(config, 0.75, 1.25);
  report.checks.push_back(make_check("rate_slope_over_target", relative, low, high));
  report.checks.push_back(make_check("max_z_vs_exact_tail", worst_z, 0.0, 3.0));
  return report;
}

ExperimentReport neutral_audit(const ExperimentConfig& config) {
  ExperimentReport report = start_report(config, ExperimentKind::kNeutralAudit);
  const double prob = config.edge_probability();
  const std::vector<std::uint64_t> grid = config.resolved_grid();
  const std::uint64_t horizon = *std::max_element(grid.begin(), grid.end());
  const GnpParams params = GnpParams::from_p(config.n, prob);
  const std::size_t points = grid.size();

  std::vector<std::vector<double>> neutral(points, std::vector<double>(config.replicas));
  for_each_replica(config.replicas, config.parallelism, [&](std::uint64_t r) {
    RngStream stream = derive_stream(config.master_seed, r);
    run_exploration(params, stream, [&](const StepState& state, std::uint64_t) {
      for (std::size_t g = 0; g < points; ++g) {
        if (grid[g] == state.t) neutral[g][r] = static_cast<double>(state.neutral);
      }
      return state.t < horizon;
    });
  });

  report.table.columns = {"t", "frequency", "stderr"};
  const double replicas = static_cast<double>(config.replicas);
  double previous_log = std::numeric_limits<double>::infinity();
  double violations = 0.0;
  for (std::size_t g = 0; g < points; ++g) {
    const std::uint64_t t = grid[g];
    const double threshold = static_cast<double>(config.n) - 5.0 * static_cast<double>(t);
    std::uint64_t hits = 0;
    for (const double value : neutral[g]) hits += value <= threshold ? 1 : 0;
    const double freq = static_cast<double>(hits) / replicas;
    report.metrics.push_back(make_metric(at_step("N", t), neutral[g]));
    report.table.rows.push_back(
        {static_cast<double>(t), freq, std::sqrt(freq * (1.0 - freq) / replicas)});

    if (t >= 50) report.checks.push_back(make_check(at_step("frequency", t), freq, 0.0, 0.01));
    if (t == 1) {
      // N_1 = n - 1 - eta_1 with eta_1 ~ Bin(n-1, p): the event is eta_1 >= 4.
      double exact = 0.0;
      const BinomialSpec first{config.n - 1, prob};
      for (std::int64_t k = 4; k <= static_cast<std::int64_t>(config.n) - 1; ++k) {
        const double term = std::exp(log_binom_pmf(k, first));
        exact += term;
        if (term < 1e-18 * exact && k > 4) break;
      }
      const double band = std::max(4.0 * std::sqrt(exact * (1.0 - exact) / replicas), 1e-12);
      report.checks.push_back(make_check("frequency@1_minus_binomial_tail", freq - exact,
                                         -band, band));
    }
    if (freq > 0.0) {
      const double log_freq = std::log(freq);
      if (log_freq > previous_log) violations += 1.0;
      previous_log = log_freq;
    }
  }
  report.checks.push_back(make_check("log_frequency_increases", violations, 0.0, 0.0));
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::kSubcritical: return run_subcritical(config);
    case ExperimentKind::kSupercritical: return run_supercritical(config);
    case ExperimentKind::kWindow: return run_window(config);
    case ExperimentKind::kMomentAudit: return moment_audit(config);
    case ExperimentKind::kTailAudit: return tail_audit(config);
    case ExperimentKind::kNeutralAudit: return neutral_audit(config);
  }
  throw ConfigError("kind", "unsupported experiment kind");
}

}  // namespace gnp_lab
