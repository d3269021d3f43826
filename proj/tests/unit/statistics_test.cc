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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "test_util.h"

namespace damnets {
namespace {

// Oracle values for this graph were computed with networkx / numpy.
Graph reference_graph() {
  return Graph(8, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}, {5, 6}, {1, 6}});
}

Graph complete(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) e.push_back({u, v});
  }
  return Graph(n, e);
}

TEST(Statistics, Names) {
  for (StatisticId id : all_statistics()) EXPECT_EQ(parse_statistic(to_string(id)), id);
  EXPECT_EQ(all_statistics().size(), 7u);
  EXPECT_EQ(parse_statistic("degree_hist"), StatisticId::kDegree);
  EXPECT_EQ(parse_statistic("sb"), StatisticId::kSpectralBipartivity);
  EXPECT_EQ(parse_statistic_list("degree,transitivity"),
            (std::vector<StatisticId>{StatisticId::kDegree, StatisticId::kTransitivity}));
  EXPECT_EQ(parse_statistic_list("all"), all_statistics());
  EXPECT_THROW(parse_statistic("wiener"), std::invalid_argument);
}

TEST(Statistics, DegreeHistogram) {
  const auto h = degree_histogram(reference_graph());
  ASSERT_EQ(h.size(), 8u);
  EXPECT_DOUBLE_EQ(h[0], 1.0 / 8);
  EXPECT_DOUBLE_EQ(h[2], 3.0 / 8);
  EXPECT_DOUBLE_EQ(h[3], 4.0 / 8);
  EXPECT_NEAR(std::accumulate(h.begin(), h.end(), 0.0), 1.0, 1e-15);
}

TEST(Statistics, LocalClusteringMatchesOracle) {
  const auto c = local_clustering(reference_graph());
  const std::vector<double> expected{1.0, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0, 1.0 / 3, 0.0, 0.0};
  ASSERT_EQ(c.size(), expected.size());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(c[i], expected[i], 1e-15);
  const auto h = clustering_histogram(reference_graph());
  ASSERT_EQ(h.size(), static_cast<std::size_t>(kClusteringBins));
  EXPECT_DOUBLE_EQ(h[0], 2.0 / 8);
  EXPECT_DOUBLE_EQ(h[33], 4.0 / 8);
  EXPECT_DOUBLE_EQ(h[99], 2.0 / 8);
}

TEST(Statistics, TransitivityAndAssortativityMatchOracle) {
  EXPECT_NEAR(transitivity(reference_graph()), 0.4, 1e-15);
  EXPECT_NEAR(assortativity(reference_graph()), -0.5, 1e-12);
  EXPECT_DOUBLE_EQ(transitivity(complete(4)), 1.0);
  EXPECT_DOUBLE_EQ(transitivity(Graph(4, {{0, 1}, {1, 2}})), 0.0);
}

TEST(Statistics, AssortativityEdgeCases) {
  // Star: every edge joins degree 3 to degree 1.
  EXPECT_NEAR(assortativity(Graph(4, {{0, 1}, {0, 2}, {0, 3}})), -1.0, 1e-12);
  // Regular graph: zero degree variance.
  EXPECT_EQ(assortativity(complete(3)), 0.0);
  EXPECT_EQ(assortativity(Graph(5)), 0.0);
}

TEST(Statistics, NormalizedLaplacianMatchesOracle) {
  const auto ev = normalized_laplacian_eigenvalues(reference_graph());
  const std::vector<double> expected{0.0, 0.0, 0.3197683326831844, 0.6966517709375349,
                                     1.2567728431010303, 1.3980905652334688, 1.615474435416681,
                                     1.713242052628101};
  ASSERT_EQ(ev.size(), expected.size());
  for (std::size_t i = 0; i < ev.size(); ++i) EXPECT_NEAR(ev[i], expected[i], 1e-12);
  const auto h = spectral_histogram(reference_graph());
  ASSERT_EQ(h.size(), static_cast<std::size_t>(kSpectralBins));
  EXPECT_NEAR(std::accumulate(h.begin(), h.end(), 0.0), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(h[0], 2.0 / 8);
}

TEST(Statistics, PathSpectrumHitsTwo) {
  const auto ev = normalized_laplacian_eigenvalues(Graph(3, {{0, 1}, {1, 2}}));
  EXPECT_NEAR(ev[0], 0.0, 1e-14);
  EXPECT_NEAR(ev[1], 1.0, 1e-14);
  EXPECT_NEAR(ev[2], 2.0, 1e-14);
  EXPECT_DOUBLE_EQ(spectral_histogram(Graph(3, {{0, 1}, {1, 2}}))[199], 1.0 / 3);
}

TEST(Statistics, ClosenessMatchesOracle) {
  EXPECT_NEAR(mean_closeness(reference_graph()), 0.5166666666666666, 1e-12);
  EXPECT_NEAR(mean_closeness(Graph(4, {{0, 1}, {1, 2}, {2, 3}})), 0.625, 1e-15);
  EXPECT_EQ(mean_closeness(Graph(3)), 0.0);
}

TEST(Statistics, SpectralBipartivity) {
  const double k3 = (std::cosh(2.0) + 2 * std::cosh(-1.0)) / (std::exp(2.0) + 2 * std::exp(-1.0));
  EXPECT_NEAR(spectral_bipartivity(complete(3)), k3, 1e-10);
  EXPECT_NEAR(spectral_bipartivity(reference_graph()), 0.8708535085634926, 1e-12);
  EXPECT_NEAR(spectral_bipartivity(Graph(6, {{0, 3}, {0, 4}, {1, 4}, {2, 5}, {1, 5}})), 1.0,
              1e-12);
  EXPECT_NEAR(spectral_bipartivity(Graph(4)), 1.0, 1e-15);
}

TEST(Statistics, SpectralBipartivityIsStableOnDenseGraphs) {
  const double sb = spectral_bipartivity(complete(120));
  EXPECT_TRUE(std::isfinite(sb));
  // The eigenvalue 119 dominates both sums, so SB tends to 1/2.
  EXPECT_NEAR(sb, 0.5, 1e-12);
}

TEST(Statistics, CurveSummaries) {
  const Graph g = reference_graph();
  EXPECT_DOUBLE_EQ(curve_summary(g, StatisticId::kDegree), 18.0 / 8);
  EXPECT_NEAR(curve_summary(g, StatisticId::kClustering), (2.0 + 4.0 / 3) / 8, 1e-15);
  EXPECT_NEAR(curve_summary(g, StatisticId::kSpectral), 1.713242052628101, 1e-12);
  EXPECT_DOUBLE_EQ(curve_summary(g, StatisticId::kTransitivity), transitivity(g));
}

TEST(Statistics, ValueShapes) {
  const Graph g = reference_graph();
  for (StatisticId id : all_statistics()) {
    const auto v = statistic_value(g, id);
    EXPECT_EQ(v.size() > 1, is_histogram(id)) << to_string(id);
  }
}

TEST(Statistics, CommunityDensities) {
  const Graph g(5, {{0, 1}, {2, 3}, {2, 4}, {1, 2}});
  const auto d = community_densities(g, {2, 3});
  EXPECT_DOUBLE_EQ(d[0], 1.0);
  EXPECT_DOUBLE_EQ(d[1], 2.0 / 3);
}

TEST(Statistics, EmptyGraphIsWellDefined) {
  const Graph g(0);
  for (StatisticId id : all_statistics()) EXPECT_NO_THROW(statistic_value(g, id));
}

}  // namespace
}  // namespace damnets
