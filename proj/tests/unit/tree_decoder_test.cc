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

#include "damnets/tree_decoder.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <vector>

#include "damnets/error.h"

namespace damnets {
namespace {

using ad::Shape;
using ad::Tape;

struct Fixture {
  explicit Fixture(int hidden, uint64_t seed) : rng(seed), uniform(rng) {
    decoder = TreeDecoder::create(store, "tree", hidden, uniform);
    root_h.resize(hidden);
    root_c.resize(hidden);
    for (auto& x : root_h) x = 2.0 * rng.uniform() - 1.0;
    for (auto& x : root_c) x = 2.0 * rng.uniform() - 1.0;
  }

  LstmState root(Tape& tape) const {
    const int f = decoder.hidden();
    return {tape.constant(Shape{1, f}, root_h), tape.constant(Shape{1, f}, root_c)};
  }

  std::vector<std::pair<NodeId, int8_t>> signed_entries(int width, uint32_t mask,
                                                         const std::vector<uint8_t>& prev) const {
    std::vector<std::pair<NodeId, int8_t>> e;
    for (int v = 0; v < width; ++v) {
      if (mask >> v & 1) e.push_back({v, static_cast<int8_t>(prev[v] ? -1 : 1)});
    }
    return e;
  }

  double log_prob(int width, uint32_t mask, const std::vector<uint8_t>& prev) const {
    Tape tape(&store);
    const auto entries = signed_entries(width, mask, prev);
    return decoder.row_log_likelihood(tape, root(tape), width, entries, prev).log_prob.item();
  }

  Rng rng;
  RngUniform uniform;
  ad::ParameterStore store;
  TreeDecoder decoder;
  std::vector<double> root_h, root_c;
};

std::vector<uint8_t> random_prev(int width, Rng& rng) {
  std::vector<uint8_t> prev(width);
  for (auto& x : prev) x = rng.bernoulli(0.4) ? 1 : 0;
  return prev;
}

std::vector<int> support_of(uint32_t mask, int width) {
  std::vector<int> s;
  for (int v = 0; v < width; ++v) {
    if (mask >> v & 1) s.push_back(v);
  }
  return s;
}

TEST(BuildTrainingTree, EmptySupportGivesSingleAbsentRoot) {
  const RowTree tree = build_training_tree({}, 7);
  EXPECT_EQ(tree.size(), 1u);
  EXPECT_FALSE(tree.root_present);
  EXPECT_TRUE(tree_leaves(tree).empty());
}

TEST(BuildTrainingTree, ZeroWidthHasNoNodes) {
  const RowTree tree = build_training_tree({}, 0);
  EXPECT_EQ(tree.size(), 0u);
}

TEST(BuildTrainingTree, SplitsAtMidpoint) {
  const std::vector<int> support{0, 4};
  const RowTree tree = build_training_tree(support, 5);
  ASSERT_GE(tree.size(), 1u);
  const auto& root = tree.nodes[0];
  EXPECT_EQ(root.interval, (Interval{0, 4}));
  ASSERT_GE(root.left, 0);
  ASSERT_GE(root.right, 0);
  EXPECT_EQ(tree.nodes[root.left].interval, (Interval{0, 2}));
  EXPECT_EQ(tree.nodes[root.right].interval, (Interval{3, 4}));
}

TEST(BuildTrainingTree, LeavesReproduceSupport) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int width = 1 + static_cast<int>(rng.below(64));
    std::vector<int> support;
    for (int v = 0; v < width; ++v) {
      if (rng.bernoulli(0.2)) support.push_back(v);
    }
    const RowTree tree = build_training_tree(support, width);
    EXPECT_EQ(tree_leaves(tree), support);
    for (const auto& node : tree.nodes) {
      EXPECT_LE(node.interval.lo, node.interval.hi);
      if (node.interval.is_leaf()) {
        EXPECT_EQ(node.left, -1);
        EXPECT_EQ(node.right, -1);
      }
    }
  }
}

TEST(BuildTrainingTree, RejectsBadSupport) {
  const std::vector<int> out_of_range{5};
  EXPECT_THROW(build_training_tree(out_of_range, 5), std::invalid_argument);
  const std::vector<int> unsorted{3, 1};
  EXPECT_THROW(build_training_tree(unsorted, 5), std::invalid_argument);
  const std::vector<int> duplicate{2, 2};
  EXPECT_THROW(build_training_tree(duplicate, 5), std::invalid_argument);
}

TEST(BuildTrainingTree, SizeBoundHolds) {
  Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int width = 1 + static_cast<int>(rng.below(256));
    const double density = rng.uniform() * 0.3;
    std::vector<int> support;
    for (int v = 0; v < width; ++v) {
      if (rng.bernoulli(density)) support.push_back(v);
    }
    const RowTree tree = build_training_tree(support, width);
    const int z = static_cast<int>(support.size());
    const int depth = static_cast<int>(std::ceil(std::log2(width)));
    if (z == 0) {
      EXPECT_EQ(tree.size(), 1u);
    } else {
      EXPECT_LE(tree.size(), static_cast<std::size_t>(2 * z * (depth + 1) + 1));
    }
  }
}

class RowNormalization : public ::testing::TestWithParam<int> {};

TEST_P(RowNormalization, ProbabilitiesSumToOne) {
  const int width = GetParam();
  Fixture fx(8, 100 + width);
  const auto prev = random_prev(width, fx.rng);
  double total = 0.0;
  for (uint32_t mask = 0; mask < (1u << width); ++mask) {
    total += std::exp(fx.log_prob(width, mask, prev));
  }
  EXPECT_NEAR(total, 1.0, 1e-8);
}

INSTANTIATE_TEST_SUITE_P(Widths, RowNormalization, ::testing::Range(1, 11));

TEST(RowLikelihood, WidthZeroIsCertain) {
  Fixture fx(4, 1);
  Tape tape(&fx.store);
  const RowScore s = fx.decoder.row_log_likelihood(tape, fx.root(tape), 0, {}, {});
  EXPECT_EQ(s.log_prob.item(), 0.0);
  EXPECT_EQ(s.decisions, 0);
  for (double x : s.g.h.value()) EXPECT_EQ(x, 0.0);
}

TEST(RowLikelihood, WidthOneIsSingleDecision) {
  Fixture fx(4, 2);
  const std::vector<uint8_t> prev{0};
  const double p_empty = std::exp(fx.log_prob(1, 0, prev));
  const double p_full = std::exp(fx.log_prob(1, 1, prev));
  EXPECT_NEAR(p_empty + p_full, 1.0, 1e-12);
  Tape tape(&fx.store);
  const auto entries = fx.signed_entries(1, 1, prev);
  EXPECT_EQ(fx.decoder.row_log_likelihood(tape, fx.root(tape), 1, entries, prev).decisions, 1);
}

TEST(RowLikelihood, RejectsSignInconsistentWithPrevious) {
  Fixture fx(4, 3);
  const std::vector<uint8_t> prev{1, 0, 0};
  Tape tape(&fx.store);
  const std::vector<std::pair<NodeId, int8_t>> add_existing{{0, 1}};
  EXPECT_THROW(fx.decoder.row_log_likelihood(tape, fx.root(tape), 3, add_existing, prev),
               GraphError);
  const std::vector<std::pair<NodeId, int8_t>> remove_missing{{1, -1}};
  EXPECT_THROW(fx.decoder.row_log_likelihood(tape, fx.root(tape), 3, remove_missing, prev),
               GraphError);
}

TEST(RowLikelihood, EmbeddingDependsOnTopologyOnly) {
  Fixture fx(6, 4);
  const std::vector<int> support{1, 3};
  const RowTree tree = build_training_tree(support, 5);
  Tape a(&fx.store), b(&fx.store);
  const auto ga = fx.decoder.row_embedding(a, tree, fx.decoder.bottom_up(a, tree));
  const auto gb = fx.decoder.row_embedding(b, tree, fx.decoder.bottom_up(b, tree));
  ASSERT_EQ(ga.h.value().size(), gb.h.value().size());
  for (std::size_t i = 0; i < ga.h.value().size(); ++i) {
    EXPECT_EQ(ga.h.value()[i], gb.h.value()[i]);
  }
}

TEST(RowSampler, LogProbMatchesScorer) {
  Fixture fx(8, 5);
  const int width = 9;
  const auto prev = random_prev(width, fx.rng);
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    Tape tape(&fx.store);
    const RowSample s = fx.decoder.sample_row(tape, fx.root(tape), width, prev, rng);
    uint32_t mask = 0;
    for (const auto& [col, sign] : s.entries) {
      mask |= 1u << col;
      EXPECT_EQ(sign, prev[col] ? -1 : 1);
    }
    EXPECT_NEAR(s.log_prob, fx.log_prob(width, mask, prev), 1e-10);
  }
}

TEST(RowSampler, EmbeddingMatchesScorer) {
  Fixture fx(8, 6);
  const int width = 7;
  const auto prev = random_prev(width, fx.rng);
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Tape tape(&fx.store);
    const RowSample s = fx.decoder.sample_row(tape, fx.root(tape), width, prev, rng);
    Tape check(&fx.store);
    const RowScore score =
        fx.decoder.row_log_likelihood(check, fx.root(check), width, s.entries, prev);
    ASSERT_EQ(s.g.h.value().size(), score.g.h.value().size());
    for (std::size_t i = 0; i < score.g.h.value().size(); ++i) {
      EXPECT_NEAR(s.g.h.value()[i], score.g.h.value()[i], 1e-12);
    }
    EXPECT_EQ(s.decisions, score.decisions);
  }
}

TEST(RowSampler, EmpiricalDistributionMatchesEnumeration) {
  Fixture fx(6, 7);
  const int width = 5;
  const auto prev = random_prev(width, fx.rng);
  std::vector<double> p(1u << width);
  for (uint32_t m = 0; m < p.size(); ++m) p[m] = std::exp(fx.log_prob(width, m, prev));
  std::vector<double> counts(p.size(), 0.0);
  Rng rng(29);
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    Tape tape(&fx.store);
    uint32_t mask = 0;
    for (const auto& e : fx.decoder.sample_row(tape, fx.root(tape), width, prev, rng).entries) {
      mask |= 1u << e.first;
    }
    counts[mask] += 1.0;
  }
  double tv = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) tv += std::abs(counts[m] / samples - p[m]);
  EXPECT_LT(0.5 * tv, 0.03);
}

TEST(RowLikelihood, GradientsMatchFiniteDifferences) {
  Fixture fx(4, 8);
  const int width = 6;
  const auto prev = random_prev(width, fx.rng);
  const uint32_t mask = 0b101001;
  const auto entries = fx.signed_entries(width, mask, prev);
  auto loss = [&]() {
    Tape tape(&fx.store);
    return fx.decoder.row_log_likelihood(tape, fx.root(tape), width, entries, prev)
        .log_prob.item();
  };
  Tape tape(&fx.store);
  const auto grads = tape.backward(
      fx.decoder.row_log_likelihood(tape, fx.root(tape), width, entries, prev).log_prob);
  double worst = 0.0;
  for (std::size_t id = 0; id < fx.store.size(); ++id) {
    auto& values = fx.store[static_cast<ad::ParamId>(id)].tensor.values;
    for (std::size_t k = 0; k < values.size(); k += 3) {
      const double saved = values[k];
      values[k] = saved + 1e-5;
      const double up = loss();
      values[k] = saved - 1e-5;
      const double down = loss();
      values[k] = saved;
      const double numeric = (up - down) / 2e-5;
      const double analytic = grads[id].values[k];
      worst = std::max(worst, std::abs(analytic - numeric) /
                                  std::max({std::abs(analytic), std::abs(numeric), 1e-3}));
    }
  }
  EXPECT_LT(worst, 1e-4);
}

}  // namespace
}  // namespace damnets
