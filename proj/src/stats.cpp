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

#include "gnp_lab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace gnp_lab {

double sorted_quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) return 0.0;
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

SummaryStats summarize(std::span<const double> values) {
  std::vector<double> sorted;
  sorted.reserve(values.size());
  for (const double v : values) {
    if (std::isfinite(v)) sorted.push_back(v);
  }
  SummaryStats s;
  s.count = sorted.size();
  if (sorted.empty()) return s;
  const double n = static_cast<double>(sorted.size());
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  double squares = 0.0;
  for (const double v : sorted) squares += (v - s.mean) * (v - s.mean);
  s.stddev = sorted.size() > 1 ? std::sqrt(squares / (n - 1.0)) : 0.0;
  s.cv = s.mean != 0.0 ? s.stddev / s.mean : 0.0;
  s.std_error = s.stddev / std::sqrt(n);
  std::sort(sorted.begin(), sorted.end());
  s.median = sorted_quantile(sorted, 0.5);
  s.q05 = sorted_quantile(sorted, 0.05);
  s.q95 = sorted_quantile(sorted, 0.95);
  return s;
}

double chi_square_survival(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

ChiSquareResult chi_square_gof(std::span<const std::uint64_t> observed,
                               std::span<const double> probabilities, double min_expected) {
  if (observed.size() != probabilities.size()) {
    throw std::invalid_argument("observed and probability cells differ in length");
  }
  const double total =
      static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));

  std::vector<double> pooled_obs;
  std::vector<double> pooled_exp;
  double obs_acc = 0.0;
  double exp_acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    obs_acc += static_cast<double>(observed[i]);
    exp_acc += probabilities[i] * total;
    if (exp_acc >= min_expected) {
      pooled_obs.push_back(obs_acc);
      pooled_exp.push_back(exp_acc);
      obs_acc = 0.0;
      exp_acc = 0.0;
    }
  }
  if (exp_acc > 0.0 || obs_acc > 0.0) {
    if (pooled_obs.empty()) {
      pooled_obs.push_back(obs_acc);
      pooled_exp.push_back(exp_acc);
    } else {
      pooled_obs.back() += obs_acc;
      pooled_exp.back() += exp_acc;
    }
  }

  ChiSquareResult result;
  result.bins = pooled_obs.size();
  for (std::size_t i = 0; i < pooled_obs.size(); ++i) {
    if (pooled_exp[i] <= 0.0) {
      if (pooled_obs[i] > 0.0) {
        result.statistic = INFINITY;
        result.p_value = 0.0;
        result.dof = result.bins > 0 ? result.bins - 1 : 0;
        return result;
      }
      continue;
    }
    const double diff = pooled_obs[i] - pooled_exp[i];
    result.statistic += diff * diff / pooled_exp[i];
  }
  result.dof = result.bins > 0 ? result.bins - 1 : 0;
  result.p_value = chi_square_survival(result.statistic, static_cast<double>(result.dof));
  return result;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs at least two paired points");
  }
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace gnp_lab
