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

#include "gnp_lab/validation.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "gnp_lab/binomial.hpp"
#include "gnp_lab/exploration.hpp"
#include "gnp_lab/graph_oracle.hpp"
#include "gnp_lab/rng.hpp"
#include "gnp_lab/stats.hpp"
#include "gnp_lab/walks.hpp"

namespace gnp_lab {

namespace {

std::string format_scientific(double value) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(2) << value;
  return out.str();
}

constexpr double kAlpha = 0.001;

std::string describe(const ChiSquareResult& r) {
  std::ostringstream out;
  out << "chi2=" << r.statistic << " dof=" << r.dof << " p=" << r.p_value;
  return out.str();
}

ValidationResult pmf_normalization() {
  double worst = 0.0;
  for (const std::uint64_t trials : {0, 1, 7, 50, 200}) {
    for (const double p : {0.0, 0.01, 0.3, 0.5, 0.9, 1.0}) {
      double total = 0.0;
      for (std::uint64_t k = 0; k <= trials; ++k) {
        total += std::exp(log_binom_pmf(static_cast<std::int64_t>(k), {trials, p}));
      }
      worst = std::max(worst, std::fabs(total - 1.0));
    }
  }
  return {"binomial pmf sums to 1", worst <= 1e-12, "max |sum - 1| = " + format_scientific(worst)};
}

ValidationResult sampler_fit(std::uint64_t seed) {
  bool pass = true;
  std::ostringstream detail;
  std::uint64_t stream_index = 0;
  for (const std::uint64_t trials : {1, 5, 50, 500}) {
    for (const double p : {0.01, 0.3, 0.9}) {
      RngStream stream = derive_stream(seed, stream_index++);
      std::vector<std::uint64_t> counts(trials + 1);
      const BinomialSampler sampler(p);
      for (int i = 0; i < 20000; ++i) ++counts[sampler(stream, trials)];
      std::vector<double> probs(trials + 1);
      for (std::uint64_t k = 0; k <= trials; ++k) {
        probs[k] = std::exp(log_binom_pmf(static_cast<std::int64_t>(k), {trials, p}));
      }
      const auto r = chi_square_gof(counts, probs);
      if (r.p_value <= kAlpha) {
        pass = false;
        detail << "N=" << trials << " p=" << p << " " << describe(r) << "; ";
      }
    }
  }
  return {"binomial sampler matches pmf", pass, pass ? "12 grid points" : detail.str()};
}

ValidationResult explicit_vs_union_find(std::uint64_t seed) {
  std::uint64_t mismatches = 0;
  std::uint64_t stream_index = 0;
  for (const double p : {0.005, 0.02, 0.1}) {
    for (int i = 0; i < 60; ++i) {
      RngStream stream = derive_stream(seed, 1000 + stream_index++);
      const std::uint64_t n = 1 + stream.next() % 200;
      const EdgeList graph = sample_gnp_explicit(GnpParams::from_p(n, p), stream);
      if (explore_explicit(graph).sorted_sizes() != components_union_find(graph)) ++mismatches;
    }
  }
  return {"explicit exploration equals union-find", mismatches == 0,
          std::to_string(mismatches) + " mismatches in 180 graphs"};
}

ValidationResult implicit_vs_enumeration(std::uint64_t seed) {
  bool pass = true;
  std::ostringstream detail;
  std::uint64_t stream_index = 0;
  for (const std::uint64_t n : {2, 3, 4}) {
    for (const double p : {0.2, 0.5, 0.8}) {
      const SizeDistribution exact = exact_size_distribution(n, p);
      std::map<std::vector<std::uint64_t>, std::uint64_t> seen;
      const GnpParams params = GnpParams::from_p(n, p);
      for (int i = 0; i < 20000; ++i) {
        RngStream stream = derive_stream(seed, 5000000 + stream_index++);
        ++seen[explore_implicit(params, stream).sorted_sizes()];
      }
      std::vector<std::uint64_t> counts;
      std::vector<double> probs;
      for (const auto& [sizes, prob] : exact.entries) {
        counts.push_back(seen.contains(sizes) ? seen[sizes] : 0);
        probs.push_back(prob);
      }
      std::uint64_t unexpected = 0;
      for (const auto& [sizes, count] : seen) {
        if (!exact.entries.contains(sizes)) unexpected += count;
      }
      const auto r = chi_square_gof(counts, probs);
      if (unexpected > 0 || r.p_value <= kAlpha) {
        pass = false;
        detail << "n=" << n << " p=" << p << " " << describe(r) << "; ";
      }
    }
  }
  return {"implicit exploration matches enumeration", pass,
          pass ? "9 (n,p) cells x 20000 runs" : detail.str()};
}

ValidationResult cycle_lemma() {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  for (std::size_t length = 1; length <= 7; ++length) {
    std::vector<std::int64_t> seq(length, -1);
    for (;;) {
      std::int64_t total = 0;
      for (const auto v : seq) total += v;
      if (total == -1) {
        ++checked;
        if (count_qualifying_rotations(seq) != 1) ++failures;
      }
      std::size_t i = 0;
      while (i < length && seq[i] == 3) seq[i++] = -1;
      if (i == length) break;
      ++seq[i];
    }
  }
  return {"cycle lemma (entries -1..3, length <= 7)", failures == 0 && checked > 0,
          std::to_string(checked) + " sequences, " + std::to_string(failures) + " failures"};
}

ValidationResult hitting_time_law(std::uint64_t seed) {
  const WalkParams params = WalkParams::make(10, 0.3);
  const std::uint64_t horizon = 400;
  std::vector<std::uint64_t> counts(horizon + 1);
  for (std::uint64_t i = 0; i < 100000; ++i) {
    RngStream stream = derive_stream(seed, 9000000 + i);
    const auto tau = simulate_tau(params, stream, horizon);
    ++counts[tau ? *tau - 1 : horizon];
  }
  const TauDistribution dist = tau_distribution(params, horizon);
  std::vector<double> probs(dist.pmf.begin(), dist.pmf.end());
  probs.push_back(dist.truncation_mass);  // censored: tau > horizon
  const auto r = chi_square_gof(counts, probs);
  return {"hitting time matches exact pmf", r.p_value > kAlpha, describe(r)};
}

ValidationResult walk_reconstruction(std::uint64_t seed) {
  std::uint64_t failures = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    RngStream stream = derive_stream(seed, 7000000 + i);
    const auto outcome =
        explore_implicit(GnpParams::from_epsilon(300, i % 2 ? 0.3 : -0.3), stream, {.trace = true});
    std::vector<std::int64_t> walk;
    std::vector<std::uint64_t> active;
    for (const auto& s : *outcome.trace) {
      walk.push_back(s.walk);
      active.push_back(s.active);
      if (s.neutral != 300 - s.t - s.active) ++failures;
    }
    if (active_from_walk(walk) != active) ++failures;
  }
  return {"A_t rebuilt from Y_t and N_t = n - t - A_t", failures == 0,
          std::to_string(failures) + " failures in 50 traced runs"};
}

}  // namespace

std::vector<ValidationResult> run_validation_suite(
    std::uint64_t seed, const std::function<void(const ValidationResult&)>& on_result) {
  std::vector<ValidationResult> results;
  auto add = [&](ValidationResult result) {
    if (on_result) on_result(result);
    results.push_back(std::move(result));
  };
  add(pmf_normalization());
  add(sampler_fit(seed));
  add(explicit_vs_union_find(seed));
  add(implicit_vs_enumeration(seed));
  add(cycle_lemma());
  add(hitting_time_law(seed));
  add(walk_reconstruction(seed));
  return results;
}

}  // namespace gnp_lab
