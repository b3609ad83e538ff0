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
#include <functional>
#include <string>
#include <vector>

namespace gnp_lab {

struct ValidationResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Small-scale oracle and invariant suite: pmf normalization, sampler
/// goodness of fit, explicit exploration against union-find, implicit
/// exploration against exhaustive enumeration, the cycle lemma, and the
/// hitting-time law. Finishes in a few seconds.
///
/// `on_result` (optional) sees each result as soon as it is produced.
std::vector<ValidationResult> run_validation_suite(
    std::uint64_t seed, const std::function<void(const ValidationResult&)>& on_result = {});

}  // namespace gnp_lab
