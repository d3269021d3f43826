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

#include "damnets/statistics.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <sstream>

namespace damnets {
namespace {

// Triangles through each node, using sorted neighbour lists.
std::vector<long long> triangles_per_node(const Graph& g,
                                          const std::vector<std::vector<NodeId>>& nbrs) {
  const auto adj = g.adjacency();
  const int n = g.num_nodes();
  std::vector<long long> tri(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    const auto& nv = nbrs[static_cast<std::size_t>(v)];
    for (std::size_t a = 0; a < nv.size(); ++a) {
      for (std::size_t b = a + 1; b < nv.size(); ++b) {
        if (adj[static_cast<std::size_t>(nv[a]) * n + nv[b]]) ++tri[static_cast<std::size_t>(v)];
      }
    }
  }
  return tri;
}

int bin_of(double x, double upper, int bins) {
  const double clamped = std::clamp(x, 0.0, upper);
  // The epsilon keeps values that sit on a bin edge up to rounding, such as
  // 1.5 on [0, 2] with 200 bins, in the upper bin.
  const int b = static_cast<int>(std::floor(clamped / upper * bins + 1e-9));
  return std::min(b, bins - 1);
}

std::vector<double> binned(const std::vector<double>& values, double upper, int bins) {
  std::vector<double> hist(static_cast<std::size_t>(bins), 0.0);
  if (values.empty()) return hist;
  for (double x : values) hist[static_cast<std::size_t>(bin_of(x, upper, bins))] += 1.0;
  for (double& h : hist) h /= static_cast<double>(values.size());
  return hist;
}

std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace

std::string to_string(StatisticId id) {
  switch (id) {
    case StatisticId::kDegree:
      return "degree";
    case StatisticId::kClustering:
      return "clustering";
    case StatisticId::kSpectral:
      return "spectral";
    case StatisticId::kTransitivity:
      return "transitivity";
    case StatisticId::kAssortativity:
      return "assortativity";
    case StatisticId::kCloseness:
      return "closeness";
    case StatisticId::kSpectralBipartivity:
      return "spectral_bipartivity";
  }
  return "degree";
}

StatisticId parse_statistic(const std::string& name) {
  for (StatisticId id : all_statistics()) {
    if (name == to_string(id)) return id;
  }
  if (name == "degree_hist") return StatisticId::kDegree;
  if (name == "clustering_hist") return StatisticId::kClustering;
  if (name == "spectral_hist") return StatisticId::kSpectral;
  if (name == "sb") return StatisticId::kSpectralBipartivity;
  throw std::invalid_argument("unknown statistic '" + name + "'");
}

std::vector<StatisticId> parse_statistic_list(const std::string& text) {
  if (text == "all") return all_statistics();
  std::vector<StatisticId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const StatisticId id = parse_statistic(item);
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  }
  if (out.empty()) throw std::invalid_argument("empty statistic list");
  return out;
}

const std::vector<StatisticId>& all_statistics() {
  static const std::vector<StatisticId> ids = {
      StatisticId::kDegree,        StatisticId::kClustering, StatisticId::kSpectral,
      StatisticId::kTransitivity,  StatisticId::kAssortativity,
      StatisticId::kCloseness,     StatisticId::kSpectralBipartivity};
  return ids;
}

bool is_histogram(StatisticId id) {
  return id == StatisticId::kDegree || id == StatisticId::kClustering ||
         id == StatisticId::kSpectral;
}

std::vector<double> degree_histogram(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<double> hist(static_cast<std::size_t>(n), 0.0);
  for (int d : g.degrees()) hist[static_cast<std::size_t>(d)] += 1.0;
  for (double& h : hist) h /= static_cast<double>(n);
  return hist;
}

std::vector<double> local_clustering(const Graph& g) {
  const auto nbrs = g.neighbors();
  const auto tri = triangles_per_node(g, nbrs);
  std::vector<double> c(tri.size(), 0.0);
  for (std::size_t v = 0; v < c.size(); ++v) {
    const double d = static_cast<double>(nbrs[v].size());
    if (d >= 2) c[v] = static_cast<double>(tri[v]) / (d * (d - 1) / 2.0);
  }
  return c;
}

std::vector<double> clustering_histogram(const Graph& g) {
  return binned(local_clustering(g), 1.0, kClusteringBins);
}

std::vector<double> normalized_laplacian_eigenvalues(const Graph& g) {
  const int n = g.num_nodes();
  const auto deg = g.degrees();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (int v = 0; v < n; ++v) {
    if (deg[static_cast<std::size_t>(v)] > 0) L(v, v) = 1.0;
  }
  for (const Edge& e : g.edges()) {
    const double w = -1.0 / std::sqrt(static_cast<double>(deg[static_cast<std::size_t>(e.u)]) *
                                      deg[static_cast<std::size_t>(e.v)]);
    L(e.u, e.v) = w;
    L(e.v, e.u) = w;
  }
  return symmetric_eigenvalues(L);
}

std::vector<double> spectral_histogram(const Graph& g) {
  return binned(normalized_laplacian_eigenvalues(g), 2.0, kSpectralBins);
}

std::vector<double> node_histogram(const Graph& g, StatisticId id) {
  switch (id) {
    case StatisticId::kDegree:
      return degree_histogram(g);
    case StatisticId::kClustering:
      return clustering_histogram(g);
    case StatisticId::kSpectral:
      return spectral_histogram(g);
    default:
      throw std::invalid_argument(to_string(id) + " is not a node histogram statistic");
  }
}

std::vector<double> adjacency_eigenvalues(const Graph& g) {
  const int n = g.num_nodes();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    A(e.u, e.v) = 1.0;
    A(e.v, e.u) = 1.0;
  }
  return symmetric_eigenvalues(A);
}

double transitivity(const Graph& g) {
  const auto nbrs = g.neighbors();
  const auto tri = triangles_per_node(g, nbrs);
  double closed = 0.0;
  double triples = 0.0;
  for (std::size_t v = 0; v < tri.size(); ++v) {
    const double d = static_cast<double>(nbrs[v].size());
    closed += static_cast<double>(tri[v]);
    triples += d * (d - 1) / 2.0;
  }
  return triples > 0.0 ? closed / triples : 0.0;
}

double assortativity(const Graph& g) {
  if (g.num_edges() == 0) return 0.0;
  const auto deg = g.degrees();
  // Each edge contributes both orientations, so x and y share moments.
  double sx = 0.0, sxx = 0.0, sxy = 0.0;
  for (const Edge& e : g.edges()) {
    const double a = deg[static_cast<std::size_t>(e.u)];
    const double b = deg[static_cast<std::size_t>(e.v)];
    sx += a + b;
    sxx += a * a + b * b;
    sxy += 2.0 * a * b;
  }
  const double m2 = 2.0 * static_cast<double>(g.num_edges());
  const double mean = sx / m2;
  const double var = sxx / m2 - mean * mean;
  if (var <= 1e-12 * std::max(1.0, mean * mean)) return 0.0;
  return (sxy / m2 - mean * mean) / var;
}

double mean_closeness(const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) return 0.0;
  const auto nbrs = g.neighbors();
  std::vector<int> dist(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    long long reached = 0, sum = 0;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (NodeId w : nbrs[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
          sum += dist[static_cast<std::size_t>(w)];
          ++reached;
          q.push(w);
        }
      }
    }
    if (sum > 0) total += static_cast<double>(reached) / static_cast<double>(sum);
  }
  return total / n;
}

double spectral_bipartivity(const Graph& g) {
  const auto ev = adjacency_eigenvalues(g);
  if (ev.empty()) return 1.0;
  // Shift by the largest eigenvalue so exp() cannot overflow; the ratio is
  // unchanged.
  const double top = *std::max_element(ev.begin(), ev.end());
  double num = 0.0, den = 0.0;
  for (double l : ev) {
    num += 0.5 * (std::exp(l - top) + std::exp(-l - top));
    den += std::exp(l - top);
  }
  return num / den;
}

double global_scalar(const Graph& g, StatisticId id) {
  switch (id) {
    case StatisticId::kTransitivity:
      return transitivity(g);
    case StatisticId::kAssortativity:
      return assortativity(g);
    case StatisticId::kCloseness:
      return mean_closeness(g);
    case StatisticId::kSpectralBipartivity:
      return spectral_bipartivity(g);
    default:
      throw std::invalid_argument(to_string(id) + " is not a scalar statistic");
  }
}

std::vector<double> statistic_value(const Graph& g, StatisticId id) {
  if (is_histogram(id)) return node_histogram(g, id);
  return {global_scalar(g, id)};
}

double curve_summary(const Graph& g, StatisticId id) {
  switch (id) {
    case StatisticId::kDegree:
      return g.num_nodes() ? 2.0 * static_cast<double>(g.num_edges()) / g.num_nodes() : 0.0;
    case StatisticId::kClustering: {
      const auto c = local_clustering(g);
      double s = 0.0;
      for (double x : c) s += x;
      return c.empty() ? 0.0 : s / static_cast<double>(c.size());
    }
    case StatisticId::kSpectral: {
      const auto ev = normalized_laplacian_eigenvalues(g);
      return ev.empty() ? 0.0 : ev.back();
    }
    default:
      return global_scalar(g, id);
  }
}

std::vector<double> community_densities(const Graph& g, const std::vector<int>& sizes) {
  std::vector<int> label;
  for (std::size_t c = 0; c < sizes.size(); ++c) label.insert(label.end(), sizes[c], static_cast<int>(c));
  if (static_cast<int>(label.size()) != g.num_nodes()) {
    throw std::invalid_argument("community sizes do not add up to the node count");
  }
  std::vector<double> internal(sizes.size(), 0.0);
  for (const Edge& e : g.edges()) {
    const int a = label[static_cast<std::size_t>(e.u)];
    if (a == label[static_cast<std::size_t>(e.v)]) internal[static_cast<std::size_t>(a)] += 1.0;
  }
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    const double s = sizes[c];
    internal[c] = s > 1 ? internal[c] / (s * (s - 1) / 2.0) : 0.0;
  }
  return internal;
}

}  // namespace damnets
