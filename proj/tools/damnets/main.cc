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

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"

namespace {

template <typename T>
void optional_seed(CLI::App* cmd, std::optional<T>& seed) {
  cmd->add_option("--seed", seed, "Random seed (entropy when omitted; recorded in the output)");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace damnets::tools;
  CLI::App app{"Generative models for network time series"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic dataset");
  g->add_option("--model", gen.model, "ba | bipartite | community")->required();
  g->add_option("--num-series", gen.num_series, "Number of series")->capture_default_str();
  optional_seed(g, gen.seed);
  g->add_option("--out", gen.out, "Output JSON Lines file")->required();
  g->add_option("--n", gen.n, "ba: number of nodes")->capture_default_str();
  g->add_option("--m", gen.m, "ba: edges per arriving node")->capture_default_str();
  g->add_option("--per-side", gen.per_side, "bipartite: nodes per side")->capture_default_str();
  g->add_option("--p", gen.p, "bipartite: initial edge probability")->capture_default_str();
  g->add_option("--p-con", gen.p_con, "bipartite: rewired fraction per step")
      ->capture_default_str();
  g->add_option("--sizes", gen.sizes, "community: community sizes")
      ->delimiter(',')
      ->capture_default_str();
  g->add_option("--p-int", gen.p_int, "community: internal edge probability")
      ->capture_default_str();
  g->add_option("--p-ext", gen.p_ext, "community: external edge probability")
      ->capture_default_str();
  g->add_option("--decay", gen.decay, "community: index of the decaying community (default last)");
  g->add_option("--f-dec", gen.f_dec, "community: decay fraction per step")
      ->capture_default_str();
  g->add_option("--T", gen.T, "bipartite/community: number of transitions");

  TrainOptions train;
  auto* t = app.add_subcommand("train", "Fit a transition model");
  t->add_option("--data", train.data, "Training dataset (JSON Lines)")->required();
  t->add_option("--model", train.model, "damnets | age-d")->capture_default_str();
  t->add_option("--config", train.config, "key = value config file");
  t->add_option("--out", train.out, "Checkpoint path")->required();
  t->add_option("--log", train.log, "Per-epoch CSV log (default <out>.log.csv)");
  optional_seed(t, train.seed);
  t->add_flag("--quiet", train.quiet, "No per-epoch progress on stderr");

  SampleOptions sample;
  auto* s = app.add_subcommand("sample", "Sample series from a checkpoint");
  s->add_option("--ckpt", sample.ckpt, "Checkpoint")->required();
  s->add_option("--init-from", sample.init_from, "Series whose G_0 seeds sampling")->required();
  s->add_option("--steps", sample.steps, "Transitions per sample (default: as in --init-from)");
  s->add_option("--per-series", sample.per_series, "Samples per initial series")
      ->capture_default_str();
  optional_seed(s, sample.seed);
  s->add_option("--out", sample.out, "Output JSON Lines file")->required();

  EvalOptions eval;
  auto* e = app.add_subcommand("eval", "Compare samples with a test set");
  e->add_option("--test", eval.test, "Test series")->required();
  e->add_option("--samples", eval.samples, "Sampled series")->required();
  e->add_option("--stats", eval.stats, "all or a comma-separated list")->capture_default_str();
  e->add_option("--out", eval.out, "Report JSON")->required();

  PlotOptions plot;
  auto* p = app.add_subcommand("plot", "Render report curves as SVG");
  p->add_option("--report", plot.report, "Report JSON")->required();
  p->add_option("--out-dir", plot.out_dir, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed()) return run_gen(gen);
    if (t->parsed()) return run_train(train);
    if (s->parsed()) return run_sample(sample);
    if (e->parsed()) return run_eval(eval);
    if (p->parsed()) return run_plot(plot);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
