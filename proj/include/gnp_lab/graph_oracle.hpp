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
#include <map>
#include <vector>

#include "gnp_lab/exploration.hpp"
#include "gnp_lab/graph.hpp"
#include "gnp_lab/rng.hpp"

namespace gnp_lab {

/// Component-size multiset (sorted descending) -> probability.
struct SizeDistribution {
  std::uint64_t n = 0;
  std::map<std::vector<std::uint64_t>, double> entries;

  double total_mass() const;
};

/// Samples G(n,p) explicitly by geometric skipping over the colexicographic
/// pair index v(v-1)/2 + u (0-based, u < v). Expected cost O(1 + p n^2).
EdgeList sample_gnp_explicit(const GnpParams& params, RngStream& stream);

/// Maps a colexicographic pair index back to the 1-based pair (u, v), u < v.
std::pair<Vertex, Vertex> decode_pair_index(std::uint64_t index);

/// Connected component sizes by union-find, sorted descending.
std::vector<std::uint64_t> components_union_find(const EdgeList& graph);

inline constexpr std::uint64_t kMaxEnumerationVertices = 5;

/// Enumerates all 2^C(n,2) graphs on n <= 5 vertices and aggregates their
/// probabilities by component-size multiset. Throws std::invalid_argument
/// for n > 5 or n == 0.
SizeDistribution exact_size_distribution(std::uint64_t n, double p);

/// Union-find with union by size; sizes of roots are always current.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t count);

  std::size_t find(std::size_t x);
  /// Returns false when x and y were already joined.
  bool unite(std::size_t x, std::size_t y);
  std::size_t size_of(std::size_t x) { return size_[find(x)]; }
  std::size_t count() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace gnp_lab
