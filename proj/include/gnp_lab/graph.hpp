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
#include <iosfwd>
#include <utility>
#include <vector>

namespace gnp_lab {

using Vertex = std::uint32_t;

/// Simple undirected graph on vertices 1..n, one entry per edge with u < v.
struct EdgeList {
  std::uint64_t n = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;

  /// Throws std::invalid_argument on a self-loop, an out-of-range or
  /// unordered endpoint pair, or a duplicate edge.
  void validate() const;
};

/// Reads the text format: a header line "n m" followed by m lines "u v"
/// (1-indexed, u < v). Throws std::runtime_error on malformed input.
EdgeList read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const EdgeList& graph);

}  // namespace gnp_lab
