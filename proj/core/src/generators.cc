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

#include "damnets/generators.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "damnets/error.h"
#include "damnets/rng.h"

namespace damnets {
namespace {

std::string format_double(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Dense symmetric adjacency used while a series is being simulated.
class WorkGraph {
 public:
  explicit WorkGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {}

  bool has(int a, int b) const { return adj_[index(a, b)] != 0; }
  void add(int a, int b) {
    adj_[index(a, b)] = 1;
    adj_[index(b, a)] = 1;
  }
  void remove(int a, int b) {
    adj_[index(a, b)] = 0;
    adj_[index(b, a)] = 0;
  }

  Graph snapshot() const {
    std::vector<Edge> edges;
    for (int v = 1; v < n_; ++v) {
      const uint8_t* row = &adj_[static_cast<std::size_t>(v) * n_];
      for (int u = 0; u < v; ++u) {
        if (row[u]) edges.push_back({u, v});
      }
    }
    return Graph(n_, std::move(edges));
  }

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * n_ + b;
  }
  int n_;
  std::vector<uint8_t> adj_;
};

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

std::vector<int> community_labels(const std::vector<int>& community_sizes) {
  std::vector<int> labels;
  for (std::size_t c = 0; c < community_sizes.size(); ++c) {
    labels.insert(labels.end(), community_sizes[c], static_cast<int>(c));
  }
  return labels;
}

NetworkTimeSeries gen_ba(const BAParams& params) {
  const int n = params.n;
  const int m = params.m;
  if (m < 1 || m >= n) {
    throw Error("gen_ba: need 1 <= m < n (got n=" + std::to_string(n) +
                ", m=" + std::to_string(m) + ")");
  }
  Rng rng(params.seed);
  NetworkTimeSeries series;
  series.n = n;
  series.id = "ba:n=" + std::to_string(n) + ":m=" + std::to_string(m) +
              ":seed=" + std::to_string(params.seed);

  std::vector<Edge> edges;
  series.graphs.emplace_back(n);

  // Each node appears once per incident edge; a uniform draw from this list is
  // a degree-proportional draw.
  std::vector<int> repeated;
  repeated.reserve(2 * static_cast<std::size_t>(m) * (n - m));
  std::vector<uint8_t> chosen(n, 0);

  for (int source = m; source < n; ++source) {
    std::vector<int> targets;
    if (source == m) {
      for (int v = 0; v < m; ++v) targets.push_back(v);
    } else {
      while (static_cast<int>(targets.size()) < m) {
        int v = repeated[rng.below(repeated.size())];
        if (!chosen[v]) {
          chosen[v] = 1;
          targets.push_back(v);
        }
      }
      for (int v : targets) chosen[v] = 0;
    }
    for (int v : targets) {
      edges.push_back({v, source});
      repeated.push_back(v);
      repeated.push_back(source);
    }
    series.graphs.emplace_back(n, edges);
  }
  return series;
}

NetworkTimeSeries gen_bipartite(const BipartiteParams& params) {
  const int side = params.per_side;
  if (side < 1) throw Error("gen_bipartite: per_side must be >= 1");
  if (params.T < 0) throw Error("gen_bipartite: T must be >= 0");
  check_probability(params.p, "p");
  check_probability(params.p_con, "p_con");

  const int n = 2 * side;
  Rng rng(params.seed);
  WorkGraph g(n);
  for (int l = 0; l < side; ++l) {
    for (int r = side; r < n; ++r) {
      if (rng.bernoulli(params.p)) g.add(l, r);
    }
  }

  NetworkTimeSeries series;
  series.n = n;
  series.id = "bipartite:per_side=" + std::to_string(side) +
              ":p=" + format_double(params.p) +
              ":p_con=" + format_double(params.p_con) +
              ":T=" + std::to_string(params.T) +
              ":seed=" + std::to_string(params.seed);
  series.graphs.push_back(g.snapshot());

  for (int t = 1; t <= params.T; ++t) {
    // Hub: right node of maximum degree, ties broken uniformly.
    std::vector<int> degree(n, 0);
    for (int l = 0; l < side; ++l) {
      for (int r = side; r < n; ++r) {
        if (g.has(l, r)) ++degree[r];
      }
    }
    int best = -1;
    std::vector<int> hubs;
    for (int r = side; r < n; ++r) {
      if (degree[r] > best) {
        best = degree[r];
        hubs.clear();
      }
      if (degree[r] == best) hubs.push_back(r);
    }
    const int hub = hubs[rng.below(hubs.size())];

    std::vector<Edge> candidates;
    for (int l = 0; l < side; ++l) {
      for (int r = side; r < n; ++r) {
        if (r != hub && g.has(l, r)) candidates.push_back({l, r});
      }
    }
    const auto k = static_cast<std::size_t>(
        std::floor(params.p_con * static_cast<double>(candidates.size())));
    for (std::size_t idx : rng.sample_without_replacement(candidates.size(), k)) {
      const Edge e = candidates[idx];
      // Already linked to the hub: leave the edge alone so |E| stays fixed.
      if (g.has(e.u, hub)) continue;
      g.remove(e.u, e.v);
      g.add(e.u, hub);
    }
    series.graphs.push_back(g.snapshot());
  }
  return series;
}

NetworkTimeSeries gen_community_decay(const CommunityDecayParams& params) {
  const auto& sizes = params.community_sizes;
  if (sizes.empty()) throw Error("gen_community_decay: no communities");
  for (int s : sizes) {
    if (s < 1) throw Error("gen_community_decay: community sizes must be positive");
  }
  const int q = static_cast<int>(sizes.size());
  if (params.decay < 0 || params.decay >= q) {
    throw Error("gen_community_decay: decay community index out of range");
  }
  if (params.T < 0) throw Error("gen_community_decay: T must be >= 0");
  check_probability(params.p_int, "p_int");
  check_probability(params.p_ext, "p_ext");
  check_probability(params.f_dec, "f_dec");

  const std::vector<int> label = community_labels(sizes);
  const int n = static_cast<int>(label.size());
  const int decay = params.decay;
  Rng rng(params.seed);

  WorkGraph g(n);
  // Internal edges of the decay community; removal is swap-and-pop.
  std::vector<Edge> internal;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      const bool same = label[u] == label[v];
      if (rng.bernoulli(same ? params.p_int : params.p_ext)) {
        g.add(u, v);
        if (same && label[u] == decay) internal.push_back({u, v});
      }
    }
  }

  std::vector<int> outside;
  for (int v = 0; v < n; ++v) {
    if (label[v] != decay) outside.push_back(v);
  }

  NetworkTimeSeries series;
  series.n = n;
  std::string size_list;
  for (int i = 0; i < q; ++i) {
    size_list += (i ? "," : "") + std::to_string(sizes[i]);
  }
  series.id = "community:sizes=" + size_list + ":p_int=" + format_double(params.p_int) +
              ":p_ext=" + format_double(params.p_ext) +
              ":decay=" + std::to_string(decay) +
              ":f_dec=" + format_double(params.f_dec) +
              ":T=" + std::to_string(params.T) +
              ":seed=" + std::to_string(params.seed);
  series.graphs.push_back(g.snapshot());

  for (int t = 1; t <= params.T; ++t) {
    const auto k = static_cast<std::size_t>(
        std::floor(params.f_dec * static_cast<double>(internal.size())));
    for (std::size_t step = 0; step < k; ++step) {
      const std::size_t pick = rng.below(internal.size());
      const Edge e = internal[pick];
      internal[pick] = internal.back();
      internal.pop_back();
      g.remove(e.u, e.v);

      const int u = rng.bernoulli(0.5) ? e.u : e.v;
      // Uniform over outside nodes not adjacent to u. Rejection first; the
      // exhaustive scan handles nearly saturated neighbourhoods.
      int target = -1;
      for (int attempt = 0; attempt < 64 && target < 0; ++attempt) {
        int v = outside[rng.below(outside.size())];
        if (!g.has(u, v)) target = v;
      }
      if (target < 0) {
        std::vector<int> free;
        for (int v : outside) {
          if (!g.has(u, v)) free.push_back(v);
        }
        if (free.empty()) {
          throw Error("gen_community_decay: node " + std::to_string(u) +
                      " has no free external endpoint (degenerate parameters)");
        }
        target = free[rng.below(free.size())];
      }
      g.add(u, target);
    }
    series.graphs.push_back(g.snapshot());
  }
  return series;
}

namespace {

template <typename Params, typename Fn>
std::vector<NetworkTimeSeries> generate_set(Params params, int count, Fn&& gen) {
  if (count < 0) throw Error("series count must be non-negative");
  const uint64_t base = params.seed;
  std::vector<NetworkTimeSeries> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    params.seed = derive_seed(base, static_cast<uint64_t>(k));
    NetworkTimeSeries s = gen(params);
    s.id += ":base_seed=" + std::to_string(base) + ":index=" + std::to_string(k);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<NetworkTimeSeries> gen_ba_set(BAParams params, int count) {
  return generate_set(params, count, gen_ba);
}

std::vector<NetworkTimeSeries> gen_bipartite_set(BipartiteParams params, int count) {
  return generate_set(params, count, gen_bipartite);
}

std::vector<NetworkTimeSeries> gen_community_decay_set(CommunityDecayParams params,
                                                       int count) {
  return generate_set(params, count, gen_community_decay);
}

}  // namespace damnets
