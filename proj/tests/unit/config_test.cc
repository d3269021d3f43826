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

#include "damnets/config.h"

#include <gtest/gtest.h>

#include <sstream>

#include "damnets/error.h"

namespace damnets {
namespace {

TEST(Config, Defaults) {
  const ModelConfig c;
  EXPECT_EQ(c.hidden, 32);
  EXPECT_EQ(c.row_model, RowModelKind::kTransformer);
  EXPECT_EQ(c.gat_activation, Activation::kTanh);
  EXPECT_DOUBLE_EQ(c.lr, 1e-3);
  EXPECT_DOUBLE_EQ(c.weight_decay, 5e-4);
  EXPECT_EQ(c.batch_size, 32);
  EXPECT_DOUBLE_EQ(c.val_fraction, 0.3);
  EXPECT_EQ(c.patience, 10);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParsesKeyValueLinesWithComments) {
  std::istringstream in(
      "# small model\n"
      "hidden = 16\n"
      "\n"
      "row_model=lstm   # trailing comment\n"
      "gat_activation = relu\n"
      "lr = 0.01\n"
      "seed = 18446744073709551615\n");
  const ModelConfig c = parse_config(in);
  EXPECT_EQ(c.hidden, 16);
  EXPECT_EQ(c.row_model, RowModelKind::kLstm);
  EXPECT_EQ(c.gat_activation, Activation::kRelu);
  EXPECT_DOUBLE_EQ(c.lr, 0.01);
  EXPECT_EQ(c.seed, 18446744073709551615ull);
}

void expect_error_on_line(const std::string& text, std::size_t line) {
  std::istringstream in(text);
  try {
    parse_config(in);
    FAIL() << "accepted " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(Config, RejectsMalformedInput) {
  expect_error_on_line("hidden = 16\nbogus = 1\n", 2);
  expect_error_on_line("hidden 16\n", 1);
  expect_error_on_line("\nhidden = sixteen\n", 2);
  expect_error_on_line("lr = 1e-3x\n", 1);
  expect_error_on_line("row_model = gru\n", 1);
  expect_error_on_line("hidden = 15\n", 0);
  expect_error_on_line("val_fraction = 1\n", 0);
}

TEST(Config, FormatRoundTrips) {
  ModelConfig c;
  c.hidden = 12;
  c.lr = 0.1 + 0.2;
  c.row_model = RowModelKind::kLstm;
  c.seed = 99;
  std::istringstream in(format_config(c));
  const ModelConfig back = parse_config(in);
  EXPECT_EQ(back.to_map(), c.to_map());
  EXPECT_EQ(back.lr, c.lr);
  EXPECT_EQ(ModelConfig::from_map(c.to_map()).to_map(), c.to_map());
}

TEST(Config, FromMapRejectsUnknownKey) {
  EXPECT_THROW(ModelConfig::from_map({{"nope", "1"}}), std::invalid_argument);
}

}  // namespace
}  // namespace damnets
