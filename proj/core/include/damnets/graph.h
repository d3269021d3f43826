// Copyright 2026 The DAMNETS Authors
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

#ifndef DAMNETS_GRAPH_H_
#define DAMNETS_GRAPH_H_

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace damnets {

using NodeId = int32_t;

// Undirected edge stored canonically with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Simple undirected graph on the labelled node set {0, ..., n-1}.
//
// The checked constructor canonicalises every pair to u < v, sorts the edge
// list and throws GraphError on self-loops, duplicates or endpoints outside
// [0, n). Graphs are immutable values.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n) {}
  Graph(int n, std::vector<Edge> edges);

  // Builds without invariant checks (pairs are still canonicalised and
  // sorted). Only for importers that run validate_nts() afterwards.
  static Graph unchecked(int n, std::vector<Edge> edges);

  int num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(NodeId a, NodeId b) const;

  // Dense row-major 0/1 adjacency, n*n entries.
  std::vector<uint8_t> adjacency() const;
  std::vector<std::vector<NodeId>> neighbors() const;
  std::vector<int> degrees() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

struct NetworkTimeSeries {
  std::string id;
  int n = 0;
  std::vector<Graph> graphs;  // G_0 .. G_T

  std::size_t num_transitions() const {
    return graphs.empty() ? 0 : graphs.size() - 1;
  }
  friend bool operator==(const NetworkTimeSeries&,
                         const NetworkTimeSeries&) = default;
};

// Signed lower-triangular difference A(t) - A(t-1), stored sparsely.
// Keys are (row u, column v) with v < u; values are +1 (add) or -1 (remove).
class DeltaMatrix {
 public:
  using Key = std::pair<NodeId, NodeId>;

  DeltaMatrix() = default;
  explicit DeltaMatrix(int n) : n_(n) {}

  int num_nodes() const { return n_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::map<Key, int8_t>& entries() const { return entries_; }

  // Accepts either orientation of the pair; throws GraphError on a diagonal
  // entry, an out-of-range node, a sign outside {-1, +1} or a duplicate.
  void set(NodeId a, NodeId b, int sign);
  int get(NodeId a, NodeId b) const;

  // Nonzero columns of row u in increasing order, with their signs.
  std::vector<std::pair<NodeId, int8_t>> row(NodeId u) const;

  friend bool operator==(const DeltaMatrix&, const DeltaMatrix&) = default;

 private:
  int n_ = 0;
  std::map<Key, int8_t> entries_;
};

DeltaMatrix compute_delta(const Graph& prev, const Graph& next);

// Throws GraphError when an addition targets an existing edge or a removal a
// missing one: such a delta is corrupt with respect to prev.
Graph apply_delta(const Graph& prev, const DeltaMatrix& delta);

struct Diagnostic {
  int timestep = -1;  // graph index, -1 for series-level problems
  std::string message;
};

// Empty result means the series is valid.
std::vector<Diagnostic> validate_nts(const NetworkTimeSeries& series);

}  // namespace damnets

#endif  // DAMNETS_GRAPH_H_
