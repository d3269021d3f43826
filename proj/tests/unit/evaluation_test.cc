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

#include "damnets/evaluation.h"

#include <gtest/gtest.h>

#include <cmath>

#include "damnets/error.h"
#include "damnets/generators.h"

namespace damnets {
namespace {

TEST(Mmd, HandCase) {
  const double expected = 2.0 - 2.0 * std::exp(-0.5);
  EXPECT_NEAR(mmd2({{1.0}}, {{0.0}}, Metric::kEuclidean), expected, 1e-12);
  EXPECT_NEAR(mmd2({{1.0, 0.0}}, {{0.0, 1.0}}, Metric::kTotalVariation), expected, 1e-12);
}

TEST(Mmd, TwoPointSets) {
  // Biased estimator: (1/4) sum k(x,x') + (1/4) sum k(y,y') - (2/4) sum k(x,y).
  const double k1 = std::exp(-0.5), k2 = std::exp(-2.0), k3 = std::exp(-4.5);
  const double xx = (2 + 2 * k1) / 4;
  const double yy = (2 + 2 * k1) / 4;
  const double xy = (k2 + k3 + k1 + k2) / 4;
  EXPECT_NEAR(mmd2({{0.0}, {1.0}}, {{2.0}, {3.0}}, Metric::kEuclidean), xx + yy - 2 * xy, 1e-14);
}

TEST(Mmd, ZeroForIdenticalSetsAndSymmetric) {
  const std::vector<std::vector<double>> a{{0.2, 0.8}, {0.5, 0.5}};
  const std::vector<std::vector<double>> b{{1.0}, {0.1, 0.1, 0.8}};
  EXPECT_EQ(mmd2(a, a, Metric::kTotalVariation), 0.0);
  EXPECT_NEAR(mmd2(a, b, Metric::kTotalVariation), mmd2(b, a, Metric::kTotalVariation), 1e-15);
  EXPECT_GT(mmd2(a, b, Metric::kTotalVariation), 0.0);
}

TEST(Mmd, PadsShorterHistograms) {
  EXPECT_DOUBLE_EQ(distance({0.5, 0.5}, {0.5, 0.25, 0.25}, Metric::kTotalVariation), 0.25);
  EXPECT_DOUBLE_EQ(distance({3.0}, {0.0, 4.0}, Metric::kEuclidean), 5.0);
}

TEST(Mmd, RejectsEmptySets) {
  EXPECT_THROW(mmd2({}, {{1.0}}, Metric::kEuclidean), std::invalid_argument);
}

TEST(MmdBar, ZeroOnIdenticalSets) {
  const auto test = gen_bipartite_set({6, 0.5, 0.2, 5, 3}, 4);
  for (StatisticId id : all_statistics()) {
    const MmdSeries m = mmd_bar(test, test, id);
    EXPECT_EQ(m.total, 0.0) << to_string(id);
    EXPECT_EQ(m.per_t.size(), 6u);
    EXPECT_FALSE(m.truncated);
  }
}

TEST(MmdBar, TruncatesToCommonLength) {
  const auto a = gen_bipartite_set({5, 0.5, 0.2, 6, 1}, 2);
  const auto b = gen_bipartite_set({5, 0.5, 0.2, 3, 2}, 2);
  const MmdSeries m = mmd_bar(a, b, StatisticId::kDegree);
  EXPECT_TRUE(m.truncated);
  EXPECT_EQ(m.per_t.size(), 4u);
  double sum = 0.0;
  for (double x : m.per_t) sum += x;
  EXPECT_DOUBLE_EQ(m.total, sum);
}

TEST(MmdBar, SeparatesDifferentModels) {
  const auto ba = gen_ba_set({20, 2, 1}, 10);
  CommunityDecayParams p;
  p.community_sizes = {10, 10};
  p.decay = 1;
  p.T = 18;
  const auto sbm = gen_community_decay_set(p, 10);
  const auto ba2 = gen_ba_set({20, 2, 2}, 10);
  EXPECT_GT(mmd_bar(ba, sbm, StatisticId::kDegree).total,
            5 * mmd_bar(ba, ba2, StatisticId::kDegree).total);
}

TEST(Report, BuildAndJsonRoundTrip) {
  const auto test = gen_ba_set({12, 2, 4}, 3);
  const auto samples = gen_ba_set({12, 2, 5}, 3);
  const EvalReport r = build_report(test, samples, all_statistics());
  ASSERT_EQ(r.stats.size(), 7u);
  const StatReport* deg = r.find(StatisticId::kDegree);
  ASSERT_NE(deg, nullptr);
  EXPECT_EQ(deg->mmd_t.size(), 11u);
  EXPECT_EQ(deg->test_curve.mean.size(), 11u);
  EXPECT_EQ(deg->test_final_hist.size(), 12u);
  const EvalReport back = report_from_json(report_to_json(r));
  EXPECT_EQ(back.meta, r.meta);
  ASSERT_EQ(back.stats.size(), r.stats.size());
  for (std::size_t i = 0; i < r.stats.size(); ++i) {
    EXPECT_EQ(back.stats[i].id, r.stats[i].id);
    EXPECT_EQ(back.stats[i].mmd_t, r.stats[i].mmd_t);
    EXPECT_EQ(back.stats[i].mmd_bar, r.stats[i].mmd_bar);
    EXPECT_EQ(back.stats[i].sample_curve.std, r.stats[i].sample_curve.std);
  }
  EXPECT_NE(report_to_json(r).find("\"spectral_bipartivity\""), std::string::npos);
}

TEST(Report, RestrictedStatistics) {
  const auto test = gen_ba_set({10, 2, 4}, 2);
  const EvalReport r =
      build_report(test, test, {StatisticId::kDegree, StatisticId::kTransitivity});
  EXPECT_EQ(r.stats.size(), 2u);
  EXPECT_EQ(r.find(StatisticId::kCloseness), nullptr);
  for (const auto& s : r.stats) EXPECT_EQ(s.mmd_bar, 0.0);
}

TEST(Report, RejectsMalformedJson) {
  EXPECT_THROW(report_from_json("{}"), ParseError);
  EXPECT_THROW(report_from_json("not json"), ParseError);
  EXPECT_THROW(build_report({}, {}, all_statistics()), std::invalid_argument);
}

}  // namespace
}  // namespace damnets
