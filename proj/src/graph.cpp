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

#include "gnp_lab/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gnp_lab {

void EdgeList::validate() const {
  for (const auto& [u, v] : edges) {
    if (u == v) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    if (u < 1 || v > n || u > v) {
      throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") must satisfy 1 <= u < v <= n");
    }
  }
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(dup->first) + "," +
                                std::to_string(dup->second) + ")");
  }
}

EdgeList read_edge_list(std::istream& in) {
  EdgeList graph;
  std::string line;
  std::uint64_t m = 0;
  if (!std::getline(in, line)) throw std::runtime_error("edge list: missing header line");
  {
    std::istringstream header(line);
    if (!(header >> graph.n >> m)) throw std::runtime_error("edge list: header must be \"n m\"");
  }
  graph.edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("edge list: expected " + std::to_string(m) + " edges, got " +
                               std::to_string(i));
    }
    std::istringstream row(line);
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!(row >> u >> v)) {
      throw std::runtime_error("edge list: malformed edge on line " + std::to_string(i + 2));
    }
    graph.edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  try {
    graph.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("edge list: ") + e.what());
  }
  return graph;
}

void write_edge_list(std::ostream& out, const EdgeList& graph) {
  out << graph.n << ' ' << graph.edges.size() << '\n';
  for (const auto& [u, v] : graph.edges) out << u << ' ' << v << '\n';
}

}  // namespace gnp_lab
