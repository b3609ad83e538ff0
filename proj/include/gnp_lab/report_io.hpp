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

#include <string>

#include <nlohmann/json.hpp>

#include "gnp_lab/experiments.hpp"
#include "gnp_lab/exploration.hpp"

namespace gnp_lab {

/// Config echo used in reports. Omits the worker count, which never
/// changes results, so reports compare byte-for-byte across thread counts.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Fully-resolved config from a JSON object. Unknown keys are rejected.
/// Throws ConfigError (naming the field) on a type or invariant violation.
ExperimentConfig config_from_json(const nlohmann::json& object);

/// {config, version, warnings, per_replica, stats, target, checks, pass, table}.
nlohmann::json report_to_json(const ExperimentReport& report);

/// One row per replica: replica index then one column per metric.
std::string report_to_csv(const ExperimentReport& report);

/// The report's plot table as CSV.
std::string table_to_csv(const Table& table);

nlohmann::json outcome_to_json(const ExplorationOutcome& outcome);

}  // namespace gnp_lab
