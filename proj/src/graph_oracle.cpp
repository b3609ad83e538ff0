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

#include "gnp_lab/graph_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace gnp_lab {

DisjointSets::DisjointSets(std::size_t count) : parent_(count), size_(count, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const std::size_t next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  return true;
}

double SizeDistribution::total_mass() const {
  double total = 0.0;
  for (const auto& [sizes, prob] : entries) total += prob;
  return total;
}

std::pair<Vertex, Vertex> decode_pair_index(std::uint64_t index) {
  // v is the largest integer with v(v-1)/2 <= index.
  auto v = static_cast<std::uint64_t>(
      std::floor((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0));
  while (v * (v - 1) / 2 > index) --v;
  while ((v + 1) * v / 2 <= index) ++v;
  const std::uint64_t u = index - v * (v - 1) / 2;
  return {static_cast<Vertex>(u + 1), static_cast<Vertex>(v + 1)};
}

EdgeList sample_gnp_explicit(const GnpParams& params, RngStream& stream) {
  EdgeList graph;
  graph.n = params.n;
  const std::uint64_t n = params.n;
  const std::uint64_t pairs = n * (n - 1) / 2;
  if (pairs == 0 || params.p == 0.0) return graph;
  if (params.p == 1.0) {
    graph.edges.reserve(pairs);
    for (std::uint64_t index = 0; index < pairs; ++index) {
      graph.edges.push_back(decode_pair_index(index));
    }
    return graph;
  }
  const double log_fail = std::log1p(-params.p);
  const double limit = static_cast<double>(pairs);
  double index = -1.0;
  for (;;) {
    index += std::floor(std::log(stream.uniform_positive()) / log_fail) + 1.0;
    if (index >= limit) break;
    graph.edges.push_back(decode_pair_index(static_cast<std::uint64_t>(index)));
  }
  return graph;
}

std::vector<std::uint64_t> components_union_find(const EdgeList& graph) {
  DisjointSets sets(graph.n);
  for (const auto& [u, v] : graph.edges) sets.unite(u - 1, v - 1);
  std::vector<std::uint64_t> sizes;
  for (std::size_t x = 0; x < graph.n; ++x) {
    if (sets.find(x) == x) sizes.push_back(sets.size_of(x));
  }
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

SizeDistribution exact_size_distribution(std::uint64_t n, double p) {
  if (n == 0 || n > kMaxEnumerationVertices) {
    throw std::invalid_argument("exact enumeration supports 1 <= n <= 5");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  const std::uint64_t pairs = n * (n - 1) / 2;
  SizeDistribution dist;
  dist.n = n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
    EdgeList graph;
    graph.n = n;
    for (std::uint64_t index = 0; index < pairs; ++index) {
      if (mask >> index & 1) graph.edges.push_back(decode_pair_index(index));
    }
    const auto present = static_cast<double>(graph.edges.size());
    const double weight =
        std::pow(p, present) * std::pow(1.0 - p, static_cast<double>(pairs) - present);
    if (weight == 0.0) continue;
    dist.entries[components_union_find(graph)] += weight;
  }
  return dist;
}

}  // namespace gnp_lab
