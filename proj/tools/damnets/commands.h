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

#ifndef DAMNETS_TOOLS_COMMANDS_H_
#define DAMNETS_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace damnets::tools {

struct GenOptions {
  std::string model;
  int num_series = 1;
  std::optional<uint64_t> seed;
  std::string out;
  // ba
  int n = 100;
  int m = 4;
  // bipartite
  int per_side = 30;
  double p = 0.5;
  double p_con = 0.1;
  // community
  std::vector<int> sizes{20, 20, 20};
  double p_int = 0.9;
  double p_ext = 0.01;
  int decay = -1;  // -1 selects the last community
  double f_dec = 0.2;
  // bipartite and community
  int T = -1;  // -1 keeps the generator default
};

struct TrainOptions {
  std::string data;
  std::string model = "damnets";
  std::string config;
  std::string out;
  std::string log;  // defaults to <out>.log.csv
  std::optional<uint64_t> seed;
  bool quiet = false;
};

struct SampleOptions {
  std::string ckpt;
  std::string init_from;
  int steps = -1;  // -1 matches each initial series' length
  int per_series = 1;
  std::optional<uint64_t> seed;
  std::string out;
};

struct EvalOptions {
  std::string test;
  std::string samples;
  std::string stats = "all";
  std::string out;
};

struct PlotOptions {
  std::string report;
  std::string out_dir;
};

// Each returns the process exit code. Errors are reported as exceptions.
int run_gen(const GenOptions& options);
int run_train(const TrainOptions& options);
int run_sample(const SampleOptions& options);
int run_eval(const EvalOptions& options);
int run_plot(const PlotOptions& options);

}  // namespace damnets::tools

#endif  // DAMNETS_TOOLS_COMMANDS_H_
