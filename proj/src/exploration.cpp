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

#include "gnp_lab/exploration.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>

namespace gnp_lab {

GnpParams GnpParams::from_p(std::uint64_t n, double p) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0,1], got " + std::to_string(p));
  }
  return GnpParams{n, p, static_cast<double>(n) * p - 1.0};
}

GnpParams GnpParams::from_epsilon(std::uint64_t n, double epsilon) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  return from_p(n, (1.0 + epsilon) / static_cast<double>(n));
}

std::vector<std::uint64_t> ExplorationOutcome::sorted_sizes() const {
  std::vector<std::uint64_t> sizes = component_sizes;
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

namespace {

class OutcomeBuilder {
 public:
  OutcomeBuilder(std::uint64_t n, bool trace) {
    if (trace) {
      outcome_.trace.emplace();
      outcome_.trace->reserve(n + 1);
      StepState initial;
      initial.neutral = n - 1;
      outcome_.trace->push_back(initial);
    }
  }

  void record(const StepState& state) {
    if (outcome_.trace) outcome_.trace->push_back(state);
    if (state.active == 0) {
      outcome_.component_sizes.push_back(state.t - last_record_);
      outcome_.record_times.push_back(state.t);
      last_record_ = state.t;
    }
  }

  ExplorationOutcome finish() && { return std::move(outcome_); }

 private:
  ExplorationOutcome outcome_;
  std::uint64_t last_record_ = 0;
};

}  // namespace

ExplorationOutcome explore_implicit(const GnpParams& params, RngStream& stream,
                                    const ExploreOptions& options) {
  OutcomeBuilder builder(params.n, options.trace);
  run_exploration(
      params, stream, [&](const StepState& state, std::uint64_t) { builder.record(state); },
      options.stop_at_first_record);
  return std::move(builder).finish();
}

ExplorationOutcome explore_explicit(const EdgeList& graph, std::span<const Vertex> order,
                                    const ExploreOptions& options) {
  graph.validate();
  const std::uint64_t n = graph.n;
  if (n == 0) throw std::invalid_argument("graph must have at least one vertex");

  std::vector<Vertex> sequence;
  if (order.empty()) {
    sequence.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) sequence[i] = static_cast<Vertex>(i + 1);
  } else {
    if (order.size() != n) throw std::invalid_argument("order must list every vertex once");
    sequence.assign(order.begin(), order.end());
  }
  // position[v] = index of v in the order
  std::vector<std::uint64_t> position(n + 1, n);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Vertex v = sequence[i];
    if (v < 1 || v > n || position[v] != n) {
      throw std::invalid_argument("order is not a permutation of 1..n");
    }
    position[v] = i;
  }

  std::vector<std::vector<Vertex>> adjacency(n + 1);
  for (const auto& [u, v] : graph.edges) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }

  enum class Status : std::uint8_t { kNeutral, kActive, kExplored };
  std::vector<Status> status(n + 1, Status::kNeutral);
  std::deque<Vertex> active;
  std::uint64_t next_neutral = 1;  // v_1 starts active, so scanning begins after it

  status[sequence[0]] = Status::kActive;
  active.push_back(sequence[0]);

  OutcomeBuilder builder(n, options.trace);
  StepState state;
  state.neutral = n - 1;
  std::vector<Vertex> found;
  for (std::uint64_t t = 1; t <= n; ++t) {
    const bool restart = active.empty();
    Vertex w = 0;
    if (restart) {
      while (status[sequence[next_neutral]] != Status::kNeutral) ++next_neutral;
      w = sequence[next_neutral];
      ++state.finished_components;
    } else {
      w = active.front();
      active.pop_front();
    }
    status[w] = Status::kExplored;

    found.clear();
    for (const Vertex x : adjacency[w]) {
      if (status[x] == Status::kNeutral) found.push_back(x);
    }
    std::sort(found.begin(), found.end(),
              [&](Vertex a, Vertex b) { return position[a] < position[b]; });
    for (const Vertex x : found) {
      status[x] = Status::kActive;
      active.push_back(x);
    }

    const std::uint64_t eta = found.size();
    state.neutral = state.neutral - eta - (restart ? 1 : 0);
    state.active = active.size();
    state.walk += static_cast<std::int64_t>(eta) - 1;
    state.t = t;
    builder.record(state);
    if (options.stop_at_first_record && state.active == 0) break;
  }
  return std::move(builder).finish();
}

std::vector<std::uint64_t> active_from_walk(std::span<const std::int64_t> walk_path) {
  if (walk_path.empty() || walk_path.front() != 1) {
    throw std::invalid_argument("walk path must start at Y_0 = 1");
  }
  std::vector<std::uint64_t> active;
  active.reserve(walk_path.size());
  active.push_back(1);
  std::int64_t running_min = walk_path.front();
  for (std::size_t t = 1; t < walk_path.size(); ++t) {
    const std::int64_t a = walk_path[t] - running_min + 1;
    if (a < 0) throw std::invalid_argument("walk path has a step below -1");
    active.push_back(static_cast<std::uint64_t>(a));
    running_min = std::min(running_min, walk_path[t]);
  }
  return active;
}

}  // namespace gnp_lab
