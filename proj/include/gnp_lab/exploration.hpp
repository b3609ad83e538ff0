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
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "gnp_lab/binomial.hpp"
#include "gnp_lab/graph.hpp"
#include "gnp_lab/rng.hpp"

namespace gnp_lab {

/// A G(n,p) instance. `epsilon` is n*p - 1 as computed in double precision.
struct GnpParams {
  std::uint64_t n = 1;
  double p = 0.0;
  double epsilon = -1.0;

  /// Throws std::invalid_argument for n == 0 or p outside [0,1].
  static GnpParams from_p(std::uint64_t n, double p);
  /// p = (1 + epsilon) / n; pass a negative epsilon for the subcritical side.
  static GnpParams from_epsilon(std::uint64_t n, double epsilon);
};

/// Counters after step t of the exploration.
///
/// active = A_t, neutral = N_t, walk = Y_t = A_t - Z_t, and
/// finished_components = Z_t, the number of components completed strictly
/// before step t.
struct StepState {
  std::uint64_t t = 0;
  std::uint64_t active = 1;
  std::uint64_t neutral = 0;
  std::int64_t walk = 1;
  std::uint64_t finished_components = 0;

  friend bool operator==(const StepState&, const StepState&) = default;
};

struct ExplorationOutcome {
  /// Component sizes in discovery order (successive gaps of record_times).
  std::vector<std::uint64_t> component_sizes;
  /// Steps t with A_t = 0, increasing.
  std::vector<std::uint64_t> record_times;
  /// One entry per step t = 0..n when tracing was requested.
  std::optional<std::vector<StepState>> trace;

  /// Component sizes sorted in descending order.
  std::vector<std::uint64_t> sorted_sizes() const;
};

struct ExploreOptions {
  bool trace = false;
  /// Stop at the first record minimum, i.e. once C(v_1) is complete.
  bool stop_at_first_record = false;
};

/// Runs the exploration process on G(n,p) without materializing any edge.
///
/// `on_step(const StepState&, std::uint64_t eta)` is invoked after every step
/// t >= 1 and must be cheap; component boundaries are the steps whose state
/// has active == 0. If on_step returns bool, returning false ends the run.
/// Returns the number of steps executed.
template <class StepFn>
std::uint64_t run_exploration(const GnpParams& params, RngStream& stream, StepFn&& on_step,
                              bool stop_at_first_record = false) {
  const BinomialSampler sampler(params.p);
  StepState state;
  state.neutral = params.n - 1;
  for (std::uint64_t t = 1; t <= params.n; ++t) {
    const bool restart = state.active == 0;
    const std::uint64_t reachable = state.neutral - (restart ? 1 : 0);
    const std::uint64_t eta = sampler(stream, reachable);
    // Z_t counts the zeros of A strictly before t.
    if (restart) ++state.finished_components;
    state.neutral = reachable - eta;
    state.active = restart ? eta : state.active + eta - 1;
    state.walk += static_cast<std::int64_t>(eta) - 1;
    state.t = t;
    if constexpr (std::is_same_v<decltype(on_step(std::as_const(state), eta)), bool>) {
      if (!on_step(std::as_const(state), eta)) return t;
    } else {
      on_step(std::as_const(state), eta);
    }
    if (stop_at_first_record && state.active == 0) return t;
  }
  return params.n;
}

ExplorationOutcome explore_implicit(const GnpParams& params, RngStream& stream,
                                    const ExploreOptions& options = {});

/// Deterministic exploration of an explicit graph. `order` is a permutation
/// of 1..n; an empty span means the identity order. Active vertices are
/// served first-in first-out, and vertices activated in the same step are
/// queued by their position in `order`.
///
/// Throws std::invalid_argument for an invalid edge list or order.
ExplorationOutcome explore_explicit(const EdgeList& graph, std::span<const Vertex> order = {},
                                    const ExploreOptions& options = {});

/// Rebuilds A_0..A_T from Y_0..Y_T through A_t = Y_t - min_{s<t} Y_s + 1.
/// Throws std::invalid_argument unless walk_path starts with 1.
std::vector<std::uint64_t> active_from_walk(std::span<const std::int64_t> walk_path);

}  // namespace gnp_lab
