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

#include "gnp_lab/report_io.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace gnp_lab {

namespace {

using nlohmann::json;

json number_or_null(double value) {
  if (!std::isfinite(value)) return nullptr;
  return value;
}

json stats_to_json(const SummaryStats& s) {
  return json{{"count", s.count},
              {"mean", number_or_null(s.mean)},
              {"median", number_or_null(s.median)},
              {"std", number_or_null(s.stddev)},
              {"cv", number_or_null(s.cv)},
              {"q05", number_or_null(s.q05)},
              {"q95", number_or_null(s.q95)},
              {"std_error", number_or_null(s.std_error)}};
}

template <class T>
T read_field(const json& object, const char* field) {
  try {
    return object.at(field).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(field, std::string("invalid value: ") + e.what());
  }
}

std::string csv_number(double value) {
  if (!std::isfinite(value)) return "";
  return json(value).dump();
}

}  // namespace

json config_to_json(const ExperimentConfig& config) {
  json out{{"kind", std::string(to_string(config.kind))},
           {"n", config.n},
           {"ell", config.ell},
           {"replicas", config.replicas},
           {"seed", config.master_seed},
           {"grid", config.resolved_grid()}};
  if (config.epsilon) out["epsilon"] = *config.epsilon;
  if (config.lambda) out["lambda"] = *config.lambda;
  if (config.p) out["p"] = *config.p;
  if (config.kind == ExperimentKind::kTailAudit) {
    out["m"] = config.m;
    out["cap"] = config.cap;
  }
  if (config.band_low) out["band_low"] = *config.band_low;
  if (config.band_high) out["band_high"] = *config.band_high;
  out["edge_probability"] = config.edge_probability();
  return out;
}

ExperimentConfig config_from_json(const json& object) {
  if (!object.is_object()) throw ConfigError("config", "must be a JSON object");
  static const std::set<std::string> known = {
      "kind", "n", "epsilon", "lambda", "p", "ell", "replicas", "seed", "master_seed",
      "parallelism", "threads", "m", "grid", "cap", "band_low", "band_high",
      "edge_probability"};
  for (const auto& [key, value] : object.items()) {
    if (!known.contains(key)) throw ConfigError(key, "unknown field");
  }
  if (object.contains("p") && object.contains("epsilon")) {
    throw ConfigError("p", "fields 'p' and 'epsilon' are mutually exclusive");
  }
  if (object.contains("seed") && object.contains("master_seed")) {
    throw ConfigError("seed", "fields 'seed' and 'master_seed' are mutually exclusive");
  }

  ExperimentConfig config;
  if (!object.contains("kind")) throw ConfigError("kind", "required");
  try {
    config.kind = parse_experiment_kind(read_field<std::string>(object, "kind"));
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ConfigError*>(&e) != nullptr) throw;
    throw ConfigError("kind", e.what());
  }
  if (object.contains("n")) config.n = read_field<std::uint64_t>(object, "n");
  if (object.contains("epsilon")) config.epsilon = read_field<double>(object, "epsilon");
  if (object.contains("lambda")) config.lambda = read_field<double>(object, "lambda");
  if (object.contains("p")) config.p = read_field<double>(object, "p");
  if (object.contains("ell")) config.ell = read_field<std::uint64_t>(object, "ell");
  if (object.contains("replicas")) config.replicas = read_field<std::uint64_t>(object, "replicas");
  if (object.contains("seed")) config.master_seed = read_field<std::uint64_t>(object, "seed");
  if (object.contains("master_seed")) {
    config.master_seed = read_field<std::uint64_t>(object, "master_seed");
  }
  if (object.contains("parallelism")) {
    config.parallelism = read_field<unsigned>(object, "parallelism");
  }
  if (object.contains("threads")) config.parallelism = read_field<unsigned>(object, "threads");
  if (object.contains("m")) config.m = read_field<std::uint64_t>(object, "m");
  if (object.contains("grid")) config.grid = read_field<std::vector<std::uint64_t>>(object, "grid");
  if (object.contains("cap")) config.cap = read_field<std::uint64_t>(object, "cap");
  if (object.contains("band_low")) config.band_low = read_field<double>(object, "band_low");
  if (object.contains("band_high")) config.band_high = read_field<double>(object, "band_high");
  return config;
}

json report_to_json(const ExperimentReport& report) {
  json per_replica = json::array();
  const std::size_t replicas = report.metrics.empty() ? 0 : report.metrics.front().values.size();
  for (std::size_t r = 0; r < replicas; ++r) {
    json row{{"replica", r}};
    for (const auto& metric : report.metrics) row[metric.name] = number_or_null(metric.values[r]);
    per_replica.push_back(std::move(row));
  }

  json stats = json::object();
  json target = json::object();
  for (const auto& metric : report.metrics) {
    stats[metric.name] = stats_to_json(metric.stats);
    if (metric.target) target[metric.name] = number_or_null(*metric.target);
  }

  json checks = json::array();
  for (const auto& check : report.checks) {
    checks.push_back({{"name", check.name},
                      {"value", number_or_null(check.value)},
                      {"low", number_or_null(check.low)},
                      {"high", number_or_null(check.high)},
                      {"pass", check.pass}});
  }

  json out{{"config", config_to_json(report.config)},
           {"version", report.version},
           {"warnings", report.warnings},
           {"per_replica", std::move(per_replica)},
           {"stats", std::move(stats)},
           {"target", std::move(target)},
           {"checks", std::move(checks)},
           {"pass", report.pass()}};
  if (!report.table.columns.empty()) {
    json rows = json::array();
    for (const auto& row : report.table.rows) {
      json cells = json::array();
      for (const double v : row) cells.push_back(number_or_null(v));
      rows.push_back(std::move(cells));
    }
    out["table"] = {{"columns", report.table.columns}, {"rows", std::move(rows)}};
  }
  return out;
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "replica";
  for (const auto& metric : report.metrics) out << ',' << metric.name;
  out << '\n';
  const std::size_t replicas = report.metrics.empty() ? 0 : report.metrics.front().values.size();
  for (std::size_t r = 0; r < replicas; ++r) {
    out << r;
    for (const auto& metric : report.metrics) out << ',' << csv_number(metric.values[r]);
    out << '\n';
  }
  return out.str();
}

std::string table_to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_number(row[i]);
    out << '\n';
  }
  return out.str();
}

json outcome_to_json(const ExplorationOutcome& outcome) {
  json out{{"component_sizes", outcome.sorted_sizes()},
           {"record_times", outcome.record_times},
           {"components", outcome.component_sizes.size()}};
  if (outcome.trace) {
    json trace = json::array();
    for (const auto& s : *outcome.trace) {
      trace.push_back({{"t", s.t},
                       {"A", s.active},
                       {"N", s.neutral},
                       {"Y", s.walk},
                       {"Z", s.finished_components}});
    }
    out["trace"] = std::move(trace);
  }
  return out;
}

}  // namespace gnp_lab
