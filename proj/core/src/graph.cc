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

#include "damnets/graph.h"

#include <algorithm>
#include <set>
#include <string>

#include "damnets/error.h"

namespace damnets {
namespace {

void canonicalize(std::vector<Edge>& edges) {
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
}

// First invariant violation of a canonicalised, sorted edge list, or "".
std::string first_violation(int n, const std::vector<Edge>& edges) {
  if (n < 0) return "negative node count";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.u == e.v) {
      return "self-loop at node " + std::to_string(e.u);
    }
    if (e.u < 0 || e.v >= n) {
      return "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
             ") outside node range [0, " + std::to_string(n) + ")";
    }
    if (i > 0 && edges[i - 1] == e) {
      return "duplicate edge (" + std::to_string(e.u) + ", " +
             std::to_string(e.v) + ")";
    }
  }
  return {};
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  canonicalize(edges_);
  if (std::string err = first_violation(n_, edges_); !err.empty()) {
    throw GraphError(err);
  }
}

Graph Graph::unchecked(int n, std::vector<Edge> edges) {
  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  canonicalize(g.edges_);
  return g;
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  Edge e{std::min(a, b), std::max(a, b)};
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<uint8_t> Graph::adjacency() const {
  std::vector<uint8_t> a(static_cast<std::size_t>(n_) * n_, 0);
  for (const Edge& e : edges_) {
    a[static_cast<std::size_t>(e.u) * n_ + e.v] = 1;
    a[static_cast<std::size_t>(e.v) * n_ + e.u] = 1;
  }
  return a;
}

std::vector<std::vector<NodeId>> Graph::neighbors() const {
  std::vector<std::vector<NodeId>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

void DeltaMatrix::set(NodeId a, NodeId b, int sign) {
  if (a == b) throw GraphError("delta entry on the diagonal");
  if (a < 0 || b < 0 || a >= n_ || b >= n_) {
    throw GraphError("delta entry outside node range");
  }
  if (sign != 1 && sign != -1) {
    throw GraphError("delta sign must be +1 or -1");
  }
  Key key{std::max(a, b), std::min(a, b)};
  if (!entries_.emplace(key, static_cast<int8_t>(sign)).second) {
    throw GraphError("duplicate delta entry");
  }
}

int DeltaMatrix::get(NodeId a, NodeId b) const {
  auto it = entries_.find(Key{std::max(a, b), std::min(a, b)});
  return it == entries_.end() ? 0 : it->second;
}

std::vector<std::pair<NodeId, int8_t>> DeltaMatrix::row(NodeId u) const {
  std::vector<std::pair<NodeId, int8_t>> out;
  for (auto it = entries_.lower_bound(Key{u, 0});
       it != entries_.end() && it->first.first == u; ++it) {
    out.emplace_back(it->first.second, it->second);
  }
  return out;
}

DeltaMatrix compute_delta(const Graph& prev, const Graph& next) {
  if (prev.num_nodes() != next.num_nodes()) {
    throw GraphError("compute_delta: node-count mismatch (" +
                     std::to_string(prev.num_nodes()) + " vs " +
                     std::to_string(next.num_nodes()) + ")");
  }
  DeltaMatrix delta(prev.num_nodes());
  const auto& a = prev.edges();
  const auto& b = next.edges();
  // Both edge lists are sorted: a linear merge yields the symmetric difference.
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      delta.set(a[i].v, a[i].u, -1);
      ++i;
    } else if (i == a.size() || b[j] < a[i]) {
      delta.set(b[j].v, b[j].u, +1);
      ++j;
    } else {
      ++i;
      ++j;
    }
  }
  return delta;
}

Graph apply_delta(const Graph& prev, const DeltaMatrix& delta) {
  if (prev.num_nodes() != delta.num_nodes()) {
    throw GraphError("apply_delta: node-count mismatch");
  }
  std::set<Edge> edges(prev.edges().begin(), prev.edges().end());
  for (const auto& [key, sign] : delta.entries()) {
    Edge e{key.second, key.first};
    if (sign > 0) {
      if (!edges.insert(e).second) {
        throw GraphError("corrupt delta: adds existing edge (" +
                         std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
      }
    } else if (edges.erase(e) == 0) {
      throw GraphError("corrupt delta: removes missing edge (" +
                       std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
  }
  return Graph(prev.num_nodes(), std::vector<Edge>(edges.begin(), edges.end()));
}

std::vector<Diagnostic> validate_nts(const NetworkTimeSeries& series) {
  std::vector<Diagnostic> out;
  if (series.n < 0) out.push_back({-1, "negative node count"});
  for (std::size_t t = 0; t < series.graphs.size(); ++t) {
    const Graph& g = series.graphs[t];
    const int step = static_cast<int>(t);
    if (g.num_nodes() != series.n) {
      out.push_back({step, "graph " + std::to_string(t) + " has n = " +
                               std::to_string(g.num_nodes()) +
                               ", series has n = " + std::to_string(series.n)});
      continue;
    }
    if (std::string err = first_violation(g.num_nodes(), g.edges());
        !err.empty()) {
      out.push_back({step, "timestep " + std::to_string(t) + ": " + err});
    }
  }
  return out;
}

}  // namespace damnets
