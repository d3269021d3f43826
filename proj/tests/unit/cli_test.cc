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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "damnets/dataset_io.h"
#include "damnets/evaluation.h"
#include "json.hpp"

namespace damnets {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("damnets_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(DAMNETS_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void write_config() const {
    std::ofstream(path("small.cfg")) << "hidden = 8\nrow_layers = 1\nage_layers = 1\n"
                                        "age_heads = 2\nmax_epochs = 2\nbatch_size = 8\nseed = 3\n";
  }

  void make_dataset() {
    ASSERT_EQ(run("gen --model ba --n 8 --m 2 --num-series 4 --seed 1 --out " + path("ba.jsonl")),
              0);
  }

  fs::path dir_;
};

TEST_F(CliTest, GenBaMatchesRequestedShape) {
  ASSERT_EQ(run("gen --model ba --n 100 --m 4 --num-series 3 --seed 1 --out " + path("ba.jsonl")),
            0);
  const auto data = load_nts(path("ba.jsonl"));
  ASSERT_EQ(data.size(), 3u);
  for (const auto& s : data) {
    EXPECT_EQ(s.num_transitions(), 96u);
    EXPECT_EQ(s.graphs.back().num_edges(), 384u);
  }
}

TEST_F(CliTest, GenCommunityAndBipartite) {
  ASSERT_EQ(run("gen --model community --sizes 5,6,7 --p-int 0.9 --p-ext 0.01 --f-dec 0.2 --T 4 "
                "--num-series 2 --seed 2 --out " + path("c.jsonl")),
            0);
  const auto c = load_nts(path("c.jsonl"));
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].n, 18);
  EXPECT_EQ(c[0].num_transitions(), 4u);
  ASSERT_EQ(run("gen --model bipartite --per-side 4 --T 3 --seed 2 --out " + path("b.jsonl")), 0);
  EXPECT_EQ(load_nts(path("b.jsonl")).at(0).n, 8);
}

TEST_F(CliTest, GenIsDeterministicAndRecordsEntropySeed) {
  make_dataset();
  ASSERT_EQ(run("gen --model ba --n 8 --m 2 --num-series 4 --seed 1 --out " + path("again.jsonl")),
            0);
  EXPECT_EQ(read(path("ba.jsonl")), read(path("again.jsonl")));
  ASSERT_EQ(run("gen --model ba --n 8 --m 2 --out " + path("entropy.jsonl")), 0);
  EXPECT_NE(load_nts(path("entropy.jsonl")).at(0).id.find("base_seed="), std::string::npos);
}

TEST_F(CliTest, UsageErrorsFail) {
  EXPECT_NE(run("gen --model ba --n 8"), 0);
  EXPECT_NE(run("gen --model er --out " + path("x.jsonl")), 0);
  EXPECT_FALSE(fs::exists(path("x.jsonl")));
  EXPECT_NE(run("gen --model ba --n 4 --m 4 --out " + path("x.jsonl")), 0);
  EXPECT_NE(run(""), 0);
  EXPECT_NE(run("frobnicate"), 0);
}

TEST_F(CliTest, TrainWritesCheckpointAndLogDeterministically) {
  make_dataset();
  write_config();
  for (const char* model : {"damnets", "age-d"}) {
    const std::string base = std::string("--data ") + path("ba.jsonl") + " --model " + model +
                             " --config " + path("small.cfg") + " --quiet";
    ASSERT_EQ(run("train " + base + " --out " + path("a.ckpt")), 0) << read(path("stderr.txt"));
    ASSERT_EQ(run("train " + base + " --out " + path("b.ckpt")), 0);
    EXPECT_EQ(read(path("a.ckpt")), read(path("b.ckpt"))) << model;
    const std::string log = read(path("a.ckpt.log.csv"));
    EXPECT_EQ(log.rfind("epoch,train_nll,val_nll", 0), 0u);
    EXPECT_EQ(std::count(log.begin(), log.end(), '\n'), 3);
  }
}

TEST_F(CliTest, TrainRejectsBadInputs) {
  make_dataset();
  write_config();
  EXPECT_NE(run("train --data " + path("missing.jsonl") + " --out " + path("m.ckpt")), 0);
  EXPECT_NE(run("train --data " + path("ba.jsonl") + " --model gran --out " + path("m.ckpt")), 0);
  std::ofstream(path("bad.cfg")) << "hidden = -3\n";
  EXPECT_NE(run("train --data " + path("ba.jsonl") + " --config " + path("bad.cfg") + " --out " +
                path("m.ckpt")),
            0);
  EXPECT_FALSE(fs::exists(path("m.ckpt")));
}

TEST_F(CliTest, SampleEvalPlotPipeline) {
  make_dataset();
  write_config();
  ASSERT_EQ(run("train --data " + path("ba.jsonl") + " --config " + path("small.cfg") +
                " --quiet --out " + path("m.ckpt")),
            0);
  const std::string sample = "sample --ckpt " + path("m.ckpt") + " --init-from " +
                             path("ba.jsonl") + " --steps 6 --per-series 2 --seed 7 --out ";
  ASSERT_EQ(run(sample + path("s1.jsonl")), 0) << read(path("stderr.txt"));
  ASSERT_EQ(run(sample + path("s2.jsonl")), 0);
  EXPECT_EQ(read(path("s1.jsonl")), read(path("s2.jsonl")));
  const auto samples = load_nts(path("s1.jsonl"));
  ASSERT_EQ(samples.size(), 8u);
  for (const auto& s : samples) EXPECT_EQ(s.graphs.size(), 7u);

  ASSERT_EQ(run("eval --test " + path("ba.jsonl") + " --samples " + path("ba.jsonl") + " --out " +
                path("self.json")),
            0);
  const EvalReport self = report_from_json(read(path("self.json")));
  EXPECT_EQ(self.stats.size(), 7u);
  for (const auto& s : self.stats) EXPECT_EQ(s.mmd_bar, 0.0);

  ASSERT_EQ(run("eval --test " + path("ba.jsonl") + " --samples " + path("s1.jsonl") +
                " --stats degree,transitivity --out " + path("r.json")),
            0);
  const auto doc = nlohmann::json::parse(read(path("r.json")));
  EXPECT_EQ(doc.at("per_stat").size(), 2u);
  EXPECT_TRUE(doc.contains("meta"));

  ASSERT_EQ(run("plot --report " + path("self.json") + " --out-dir " + path("plots/nested")), 0);
  int svgs = 0;
  for (const auto& e : fs::directory_iterator(path("plots/nested"))) {
    svgs += e.path().extension() == ".svg";
  }
  EXPECT_EQ(svgs, 8);
  EXPECT_TRUE(fs::exists(path("plots/nested/spectral_bipartivity.svg")));
  EXPECT_TRUE(fs::exists(path("plots/nested/degree_distribution.svg")));
  EXPECT_EQ(read(path("plots/nested/degree.svg")).rfind("<svg", 0), 0u);
}

TEST_F(CliTest, SampleRejectsNodeCountMismatch) {
  make_dataset();
  write_config();
  ASSERT_EQ(run("train --data " + path("ba.jsonl") + " --config " + path("small.cfg") +
                " --quiet --out " + path("m.ckpt")),
            0);
  ASSERT_EQ(run("gen --model ba --n 9 --m 2 --seed 1 --out " + path("n9.jsonl")), 0);
  EXPECT_NE(run("sample --ckpt " + path("m.ckpt") + " --init-from " + path("n9.jsonl") +
                " --seed 1 --out " + path("s.jsonl")),
            0);
  EXPECT_FALSE(fs::exists(path("s.jsonl")));
  EXPECT_NE(run("plot --report " + path("missing.json") + " --out-dir " + path("p")), 0);
  EXPECT_NE(run("eval --test " + path("ba.jsonl") + " --samples " + path("n9.jsonl") +
                " --out " + path("r.json")),
            0);
}

}  // namespace
}  // namespace damnets
