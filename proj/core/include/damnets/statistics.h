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

#ifndef DAMNETS_STATISTICS_H_
#define DAMNETS_STATISTICS_H_

#include <string>
#include <vector>

#include "damnets/graph.h"

namespace damnets {

enum class StatisticId {
  kDegree,
  kClustering,
  kSpectral,
  kTransitivity,
  kAssortativity,
  kCloseness,
  kSpectralBipartivity,
};

// Canonical names: degree, clustering, spectral, transitivity,
// assortativity, closeness, spectral_bipartivity. parse_statistic also
// accepts the *_hist spellings of the first three and "sb".
std::string to_string(StatisticId id);
StatisticId parse_statistic(const std::string& name);
// "all" or a comma-separated list.
std::vector<StatisticId> parse_statistic_list(const std::string& text);
const std::vector<StatisticId>& all_statistics();

// Node-level histograms compare under total variation; the rest are
// per-graph scalars.
bool is_histogram(StatisticId id);

inline constexpr int kClusteringBins = 100;
inline constexpr int kSpectralBins = 200;

// Fraction of nodes with degree d, d = 0..n-1.
std::vector<double> degree_histogram(const Graph& g);
// Local clustering coefficients in 100 equal bins over [0, 1].
std::vector<double> clustering_histogram(const Graph& g);
// Normalised-Laplacian eigenvalues in 200 equal bins over [0, 2].
std::vector<double> spectral_histogram(const Graph& g);
std::vector<double> node_histogram(const Graph& g, StatisticId id);

// Triangles through v over the pairs of its neighbours; 0 below degree 2.
std::vector<double> local_clustering(const Graph& g);
// Eigenvalues of I - D^-1/2 A D^-1/2, ascending. Rows of isolated nodes are
// zero, so each isolated node contributes eigenvalue 0.
std::vector<double> normalized_laplacian_eigenvalues(const Graph& g);
std::vector<double> adjacency_eigenvalues(const Graph& g);

// 3 * triangles / connected triples; 0 without triples.
double transitivity(const Graph& g);
// Pearson correlation of endpoint degrees over edges; 0 when either
// degree variance vanishes or there are no edges.
double assortativity(const Graph& g);
// Mean over nodes of (r - 1) / (sum of distances inside the node's
// component), r the component size; nodes in singleton components give 0.
double mean_closeness(const Graph& g);
// sum cosh(lambda) / sum exp(lambda) over adjacency eigenvalues.
double spectral_bipartivity(const Graph& g);

double global_scalar(const Graph& g, StatisticId id);

// The value entering the MMD: the histogram, or a 1-vector for scalars.
std::vector<double> statistic_value(const Graph& g, StatisticId id);
// A single number per graph for statistic-vs-time curves: mean degree,
// average clustering, largest normalised-Laplacian eigenvalue, or the
// scalar statistic itself.
double curve_summary(const Graph& g, StatisticId id);

// Internal edge density of each contiguous community block.
std::vector<double> community_densities(const Graph& g, const std::vector<int>& sizes);

}  // namespace damnets

#endif  // DAMNETS_STATISTICS_H_
