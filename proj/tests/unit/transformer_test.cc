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

#include "damnets/transformer.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "damnets/grad_check.h"
#include "damnets/row_autoregressor.h"

namespace damnets {
namespace {

using ad::Shape;
using ad::Tape;
using ad::Tensor;
using ad::Var;

Tensor random_tensor(Shape s, Rng& rng) {
  Tensor t(s);
  for (auto& x : t.values) x = 2.0 * rng.uniform() - 1.0;
  return t;
}

TEST(CausalMask, UpperTriangleBlocked) {
  const auto m = causal_mask(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (j > i) {
        EXPECT_TRUE(std::isinf(m[i * 3 + j]));
      } else {
        EXPECT_EQ(m[i * 3 + j], 0.0);
      }
    }
  }
}

TEST(TransformerGrad, EncoderBlock) {
  ad::ParameterStore store;
  Rng rng(1);
  RngUniform u(rng);
  const TransformerBlock block = TransformerBlock::create(store, "blk", 4, 2, 8, false, u);
  for (std::size_t i = 0; i < store.size(); ++i) {
    for (auto& v : store[static_cast<ad::ParamId>(i)].tensor.values) v += 0.2 * (rng.uniform() - 0.5);
  }
  const auto mask = causal_mask(3);
  const auto r = grad_check(
      [&](Tape& tape, std::span<const Var> x) {
        return block(tape, x[0], tape.constant(Shape{3, 3}, mask), {});
      },
      {random_tensor(Shape{3, 4}, rng)}, &store);
  EXPECT_LT(r.max_rel_error, 1e-4) << r.worst;
}

TEST(TransformerGrad, CrossAttentionBlock) {
  ad::ParameterStore store;
  Rng rng(2);
  RngUniform u(rng);
  const TransformerBlock block = TransformerBlock::create(store, "blk", 4, 2, 8, true, u);
  const auto r = grad_check(
      [&](Tape& tape, std::span<const Var> x) { return block(tape, x[0], {}, x[1]); },
      {random_tensor(Shape{2, 4}, rng), random_tensor(Shape{3, 4}, rng)}, &store);
  EXPECT_LT(r.max_rel_error, 1e-4) << r.worst;
}

TEST(Transformer, OutputsAreCausal) {
  ad::ParameterStore store;
  Rng rng(3);
  RngUniform u(rng);
  TransformerOptions opt{8, 2, 2, 16, true, true, false};
  const Transformer tf = Transformer::create(store, "tf", opt, u);
  Tensor x = random_tensor(Shape{5, 8}, rng);
  Tape a(&store);
  const Var ya = tf(a, a.constant(x.shape, x.values));
  x.at(4, 1) += 1.0;
  Tape b(&store);
  const Var yb = tf(b, b.constant(x.shape, x.values));
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 8; ++c) EXPECT_EQ(ya.at(r, c), yb.at(r, c));
  }
  double diff = 0.0;
  for (int c = 0; c < 8; ++c) diff += std::abs(ya.at(4, c) - yb.at(4, c));
  EXPECT_GT(diff, 1e-6);
}

TEST(Transformer, StepperMatchesFullPass) {
  ad::ParameterStore store;
  Rng rng(4);
  RngUniform u(rng);
  for (bool cross : {false, true}) {
    TransformerOptions opt{8, 2, 4, 16, !cross, true, cross};
    const Transformer tf = Transformer::create(store, cross ? "x" : "s", opt, u);
    const Tensor x = random_tensor(Shape{6, 8}, rng);
    const Tensor mem = random_tensor(Shape{4, 8}, rng);
    Tape tape(&store);
    const Var memory = cross ? tape.constant(mem.shape, mem.values) : Var{};
    const Var full = tf(tape, tape.constant(x.shape, x.values), memory);
    TransformerStepper stepper(tf, tape, memory);
    for (int r = 0; r < 6; ++r) {
      const Var row = stepper.push(tape.constant(Shape{1, 8}, std::span(x.values).subspan(r * 8, 8)));
      for (int c = 0; c < 8; ++c) EXPECT_NEAR(row.at(0, c), full.at(r, c), 1e-12);
    }
    EXPECT_EQ(stepper.position(), 6);
  }
}

TEST(Transformer, NonCausalEncoderSeesWholeSequence) {
  ad::ParameterStore store;
  Rng rng(5);
  RngUniform u(rng);
  TransformerOptions opt{4, 1, 1, 8, false, false, false};
  const Transformer tf = Transformer::create(store, "enc", opt, u);
  Tensor x = random_tensor(Shape{3, 4}, rng);
  Tape a(&store);
  const Var ya = tf(a, a.constant(x.shape, x.values));
  x.at(2, 0) += 1.0;
  Tape b(&store);
  const Var yb = tf(b, b.constant(x.shape, x.values));
  EXPECT_NE(ya.at(0, 0), yb.at(0, 0));
}

TEST(Transformer, PermutationEquivariantWithoutPositions) {
  ad::ParameterStore store;
  Rng rng(6);
  RngUniform u(rng);
  TransformerOptions opt{4, 2, 2, 8, false, false, false};
  const Transformer tf = Transformer::create(store, "enc", opt, u);
  const Tensor x = random_tensor(Shape{3, 4}, rng);
  Tensor swapped = x;
  for (int c = 0; c < 4; ++c) std::swap(swapped.at(0, c), swapped.at(2, c));
  Tape tape(&store);
  const Var ya = tf(tape, tape.constant(x.shape, x.values));
  const Var yb = tf(tape, tape.constant(swapped.shape, swapped.values));
  for (int c = 0; c < 4; ++c) {
    EXPECT_NEAR(ya.at(0, c), yb.at(2, c), 1e-12);
    EXPECT_NEAR(ya.at(1, c), yb.at(1, c), 1e-12);
  }
}

class RowModelTest : public ::testing::TestWithParam<RowModelKind> {};

TEST_P(RowModelTest, StepperMatchesForward) {
  ad::ParameterStore store;
  Rng rng(7);
  RngUniform u(rng);
  const auto model = make_row_model(GetParam(), store, "row", 8, 2, u);
  const Tensor g = random_tensor(Shape{5, 8}, rng);
  Tape tape(&store);
  const Var full = model->forward(tape, tape.constant(g.shape, g.values));
  const auto stepper = model->stepper(tape);
  for (int r = 0; r < 5; ++r) {
    const Var h = stepper->push(tape.constant(Shape{1, 8}, std::span(g.values).subspan(r * 8, 8)));
    for (int c = 0; c < 8; ++c) EXPECT_NEAR(h.at(0, c), full.at(r, c), 1e-12);
  }
}

TEST_P(RowModelTest, Gradients) {
  ad::ParameterStore store;
  Rng rng(8);
  RngUniform u(rng);
  const auto model = make_row_model(GetParam(), store, "row", 4, 2, u);
  const auto r = grad_check(
      [&](Tape& tape, std::span<const Var> x) { return model->forward(tape, x[0]); },
      {random_tensor(Shape{3, 4}, rng)}, &store);
  EXPECT_LT(r.max_rel_error, 1e-4) << r.worst;
}

INSTANTIATE_TEST_SUITE_P(Kinds, RowModelTest,
                         ::testing::Values(RowModelKind::kTransformer, RowModelKind::kLstm));

TEST(RowModelKind, ParseAndFormat) {
  EXPECT_EQ(parse_row_model_kind("lstm"), RowModelKind::kLstm);
  EXPECT_EQ(parse_row_model_kind(to_string(RowModelKind::kTransformer)),
            RowModelKind::kTransformer);
  EXPECT_THROW(parse_row_model_kind("gru"), std::invalid_argument);
}

}  // namespace
}  // namespace damnets
