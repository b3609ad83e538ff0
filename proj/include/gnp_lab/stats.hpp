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
#include <span>
#include <vector>

namespace gnp_lab {

struct SummaryStats {
  std::uint64_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double cv = 0.0;      // stddev / mean
  double q05 = 0.0;
  double q95 = 0.0;
  double std_error = 0.0;
};

/// Linear-interpolated quantile (type 7) of an ascending-sorted sample.
double sorted_quantile(std::span<const double> sorted, double prob);

/// Summaries are computed from the values in the order given; callers pass
/// per-replica values in replica order so the floating sums are reproducible.
/// Non-finite values are skipped; `count` is the number used.
SummaryStats summarize(std::span<const double> values);

struct ChiSquareResult {
  double statistic = 0.0;
  std::uint64_t dof = 0;
  double p_value = 1.0;
  std::uint64_t bins = 0;  // after pooling
};

/// Pearson goodness-of-fit of `observed` counts against `probabilities`.
///
/// Adjacent cells are pooled, left to right, until each pooled cell expects
/// at least `min_expected` observations; a leftover short cell is merged
/// into its predecessor. Probability mass outside the listed cells must be
/// passed as a final cell by the caller.
ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities,
                               double min_expected = 5.0);

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_survival(double statistic, double dof);

/// Ordinary least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace gnp_lab
