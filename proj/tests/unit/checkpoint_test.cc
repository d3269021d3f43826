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

#include "damnets/checkpoint.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "damnets/error.h"

namespace damnets {
namespace {

ModelConfig small_config() {
  ModelConfig c;
  c.hidden = 8;
  c.row_layers = 1;
  c.age_layers = 1;
  c.seed = 3;
  return c;
}

TrainingMetadata sample_meta() {
  TrainingMetadata m;
  m.best_val_nll = 12.5;
  m.best_epoch = 4;
  m.epochs_run = 9;
  m.stop_reason = "patience";
  m.split_seed = 77;
  m.num_train = 10;
  m.num_val = 4;
  return m;
}

class CheckpointRoundTrip : public ::testing::TestWithParam<const char*> {};

TEST_P(CheckpointRoundTrip, PreservesParametersAsFloats) {
  auto model = make_model(GetParam(), 5, small_config());
  std::stringstream buf;
  write_checkpoint(buf, *model, sample_meta());
  const Checkpoint ck = read_checkpoint(buf);
  EXPECT_EQ(ck.model->kind(), GetParam());
  EXPECT_EQ(ck.model->n(), 5);
  EXPECT_EQ(ck.model->config().to_map(), model->config().to_map());
  EXPECT_EQ(ck.meta.best_epoch, 4);
  EXPECT_EQ(ck.meta.stop_reason, "patience");
  EXPECT_EQ(ck.meta.split_seed, 77u);
  EXPECT_DOUBLE_EQ(ck.meta.best_val_nll, 12.5);
  ASSERT_EQ(ck.model->params().size(), model->params().size());
  for (std::size_t i = 0; i < model->params().size(); ++i) {
    const auto id = static_cast<ad::ParamId>(i);
    const auto& a = model->params()[id];
    const auto& b = ck.model->params()[id];
    EXPECT_EQ(a.name, b.name);
    ASSERT_EQ(a.tensor.values.size(), b.tensor.values.size());
    for (std::size_t k = 0; k < a.tensor.values.size(); ++k) {
      EXPECT_EQ(b.tensor.values[k], static_cast<double>(static_cast<float>(a.tensor.values[k])));
    }
  }
}

TEST_P(CheckpointRoundTrip, SerialisationIsDeterministic) {
  auto a = make_model(GetParam(), 4, small_config());
  auto b = make_model(GetParam(), 4, small_config());
  std::stringstream sa, sb;
  write_checkpoint(sa, *a, sample_meta());
  write_checkpoint(sb, *b, sample_meta());
  EXPECT_EQ(sa.str(), sb.str());
}

INSTANTIATE_TEST_SUITE_P(Kinds, CheckpointRoundTrip, ::testing::Values("damnets", "age-d"));

std::string valid_bytes() {
  auto model = make_model("damnets", 4, small_config());
  std::stringstream buf;
  write_checkpoint(buf, *model, sample_meta());
  return buf.str();
}

TEST(Checkpoint, Layout) {
  const std::string bytes = valid_bytes();
  EXPECT_EQ(bytes.substr(0, 4), "DMNT");
  EXPECT_EQ(static_cast<uint8_t>(bytes[4]), kCheckpointVersion);
}

void expect_rejected(const std::string& bytes) {
  std::stringstream in(bytes);
  EXPECT_THROW(read_checkpoint(in), CheckpointError);
}

TEST(Checkpoint, RejectsCorruptInput) {
  const std::string good = valid_bytes();
  std::string bad_magic = good;
  bad_magic[0] = 'X';
  expect_rejected(bad_magic);
  std::string bad_version = good;
  bad_version[4] = 99;
  expect_rejected(bad_version);
  expect_rejected(good.substr(0, good.size() - 3));
  expect_rejected(good.substr(0, 7));
  expect_rejected("");
}

TEST(Checkpoint, RejectsManifestMismatch) {
  std::string bytes = valid_bytes();
  // Rename the first manifest entry in place; the header length is unchanged.
  const auto pos = bytes.find("gat0.");
  ASSERT_NE(pos, std::string::npos);
  bytes[pos] = 'x';
  expect_rejected(bytes);
}

TEST(Checkpoint, InfiniteValidationNllSurvives) {
  auto model = make_model("age-d", 3, small_config());
  TrainingMetadata meta = sample_meta();
  meta.best_val_nll = std::numeric_limits<double>::infinity();
  std::stringstream buf;
  write_checkpoint(buf, *model, meta);
  EXPECT_TRUE(std::isinf(read_checkpoint(buf).meta.best_val_nll));
}

TEST(Checkpoint, FileRoundTrip) {
  auto model = make_model("damnets", 3, small_config());
  const auto path = std::filesystem::temp_directory_path() / "damnets_ck_test.ckpt";
  save_checkpoint(*model, sample_meta(), path);
  EXPECT_EQ(load_checkpoint(path).model->kind(), "damnets");
  std::filesystem::remove(path);
  EXPECT_THROW(load_checkpoint(path), Error);
}

TEST(MakeModel, RejectsUnknownKind) {
  EXPECT_THROW(make_model("gran", 3, small_config()), std::invalid_argument);
}

}  // namespace
}  // namespace damnets
