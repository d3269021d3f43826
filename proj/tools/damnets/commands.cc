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

#include "commands.h"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "damnets/checkpoint.h"
#include "damnets/config.h"
#include "damnets/dataset_io.h"
#include "damnets/error.h"
#include "damnets/evaluation.h"
#include "damnets/generators.h"
#include "damnets/rng.h"
#include "damnets/statistics.h"
#include "damnets/training.h"
#include "svg_plot.h"

namespace damnets::tools {
namespace fs = std::filesystem;

namespace {

void require_readable(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) {
    throw Error(std::string(what) + " '" + path + "' does not exist or is not a file");
  }
}

void require_writable_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw Error("output directory '" + parent.string() + "' does not exist");
  }
}

int common_n(const std::vector<NetworkTimeSeries>& data, const std::string& what) {
  if (data.empty()) throw Error(what + " contains no series");
  for (const auto& s : data) {
    if (s.n != data.front().n) {
      throw Error(what + " mixes node counts " + std::to_string(data.front().n) + " and " +
                  std::to_string(s.n));
    }
  }
  return data.front().n;
}

uint64_t resolve_seed(const std::optional<uint64_t>& seed, const char* command) {
  if (seed) return *seed;
  const uint64_t s = entropy_seed();
  std::cerr << command << ": no --seed given, using entropy seed " << s << "\n";
  return s;
}

std::string fixed(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace

int run_gen(const GenOptions& o) {
  if (o.num_series < 1) throw Error("--num-series must be >= 1");
  require_writable_parent(o.out);
  const uint64_t seed = resolve_seed(o.seed, "gen");

  std::vector<NetworkTimeSeries> data;
  if (o.model == "ba") {
    data = gen_ba_set({o.n, o.m, seed}, o.num_series);
  } else if (o.model == "bipartite") {
    BipartiteParams p;
    p.per_side = o.per_side;
    p.p = o.p;
    p.p_con = o.p_con;
    if (o.T >= 0) p.T = o.T;
    p.seed = seed;
    data = gen_bipartite_set(p, o.num_series);
  } else if (o.model == "community") {
    CommunityDecayParams p;
    p.community_sizes = o.sizes;
    p.p_int = o.p_int;
    p.p_ext = o.p_ext;
    p.decay = o.decay >= 0 ? o.decay : static_cast<int>(o.sizes.size()) - 1;
    p.f_dec = o.f_dec;
    if (o.T >= 0) p.T = o.T;
    p.seed = seed;
    data = gen_community_decay_set(p, o.num_series);
  } else {
    throw Error("unknown generator '" + o.model + "' (expected ba|bipartite|community)");
  }
  save_nts(data, o.out);
  std::cout << "wrote " << data.size() << " series (n=" << data.front().n
            << ", T=" << data.front().num_transitions() << ", seed=" << seed << ") to " << o.out
            << "\n";
  return 0;
}

int run_train(const TrainOptions& o) {
  require_readable(o.data, "dataset");
  if (o.model != "damnets" && o.model != "age-d") {
    throw Error("unknown model '" + o.model + "' (expected damnets|age-d)");
  }
  ModelConfig config;
  if (!o.config.empty()) {
    require_readable(o.config, "config");
    config = load_config(o.config);
  }
  if (o.seed) config.seed = *o.seed;
  const std::string log_path = o.log.empty() ? o.out + ".log.csv" : o.log;
  require_writable_parent(o.out);
  require_writable_parent(log_path);

  const auto data = load_nts(o.data);
  const int n = common_n(data, o.data);
  std::size_t transitions = 0;
  for (const auto& s : data) transitions += s.num_transitions();
  if (transitions < 2) throw Error("training needs at least two transitions");

  auto model = make_model(o.model, n, config);
  std::cerr << "training " << o.model << " on " << data.size() << " series (n=" << n << ", "
            << transitions << " transitions, " << model->params().num_scalars()
            << " parameters, seed=" << config.seed << ")\n";

  std::ostringstream log;
  log << "epoch,train_nll,val_nll,train_nll_per_decision,val_nll_per_decision,seconds\n";
  const TrainResult result = train(*model, data, [&](const EpochLog& e) {
    log << e.epoch << ',' << fixed(e.train_nll, 10) << ',' << fixed(e.val_nll, 10) << ','
        << fixed(e.train_nll_per_decision, 10) << ',' << fixed(e.val_nll_per_decision, 10) << ','
        << fixed(e.seconds, 4) << '\n';
    if (!o.quiet) {
      std::cerr << "epoch " << e.epoch << "  train " << fixed(e.train_nll) << "  val "
                << fixed(e.val_nll) << "  (" << fixed(e.seconds, 4) << " s)\n";
    }
  });

  save_checkpoint(*model, result.meta, o.out);
  std::ofstream log_file(log_path);
  if (!log_file) throw Error("cannot write training log " + log_path);
  log_file << log.str();
  std::cout << "stopped after " << result.meta.epochs_run << " epochs ("
            << result.meta.stop_reason << "); best val NLL " << fixed(result.meta.best_val_nll)
            << " at epoch " << result.meta.best_epoch << "\nwrote " << o.out << " and "
            << log_path << "\n";
  return 0;
}

int run_sample(const SampleOptions& o) {
  require_readable(o.ckpt, "checkpoint");
  require_readable(o.init_from, "initial graphs");
  if (o.per_series < 1) throw Error("--per-series must be >= 1");
  if (o.steps < -1) throw Error("--steps must be >= 0");
  require_writable_parent(o.out);
  const uint64_t seed = resolve_seed(o.seed, "sample");

  const Checkpoint ck = load_checkpoint(o.ckpt);
  const auto init = load_nts(o.init_from);
  const int n = common_n(init, o.init_from);
  if (n != ck.model->n()) {
    throw Error("checkpoint was trained on n=" + std::to_string(ck.model->n()) + " but " +
                o.init_from + " has n=" + std::to_string(n));
  }
  for (const auto& s : init) {
    if (s.graphs.empty()) throw Error("series '" + s.id + "' has no initial graph");
  }

  std::vector<NetworkTimeSeries> out;
  for (std::size_t i = 0; i < init.size(); ++i) {
    const int steps = o.steps >= 0 ? o.steps : static_cast<int>(init[i].num_transitions());
    for (int k = 0; k < o.per_series; ++k) {
      Rng rng(derive_seed(seed, i * static_cast<uint64_t>(o.per_series) + k));
      NetworkTimeSeries s = ck.model->sample_series(init[i].graphs.front(), steps, rng);
      s.id = init[i].id + "#sample" + std::to_string(k) + ":model=" + ck.model->kind() +
             ":seed=" + std::to_string(seed);
      out.push_back(std::move(s));
    }
  }
  save_nts(out, o.out);
  std::cout << "wrote " << out.size() << " sampled series (seed=" << seed << ") to " << o.out
            << "\n";
  return 0;
}

int run_eval(const EvalOptions& o) {
  require_readable(o.test, "test set");
  require_readable(o.samples, "samples");
  const auto stats = parse_statistic_list(o.stats);
  require_writable_parent(o.out);
  const auto test = load_nts(o.test);
  const auto samples = load_nts(o.samples);
  const int n_test = common_n(test, o.test);
  const int n_samples = common_n(samples, o.samples);
  if (n_test != n_samples) {
    throw Error("test set has n=" + std::to_string(n_test) + " but samples have n=" +
                std::to_string(n_samples));
  }
  EvalReport report = build_report(test, samples, stats);
  report.meta["test_file"] = o.test;
  report.meta["samples_file"] = o.samples;
  std::ofstream out(o.out);
  if (!out) throw Error("cannot write " + o.out);
  out << report_to_json(report) << "\n";
  if (!out) throw Error("failed writing " + o.out);

  if (report.meta["truncated"] == "true") {
    std::cerr << "eval: series lengths differ; compared the first " << report.meta["timesteps"]
              << " graphs\n";
  }
  for (const auto& s : report.stats) {
    std::cout << std::left << std::setw(22) << to_string(s.id) << fixed(s.mmd_bar) << "\n";
  }
  std::cout << "wrote " << o.out << "\n";
  return 0;
}

int run_plot(const PlotOptions& o) {
  require_readable(o.report, "report");
  std::ifstream in(o.report);
  std::stringstream buf;
  buf << in.rdbuf();
  const EvalReport report = report_from_json(buf.str());
  fs::create_directories(o.out_dir);

  auto write = [&](const std::string& name, const std::string& svg) {
    const fs::path path = fs::path(o.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << svg;
  };

  int files = 0;
  for (const auto& s : report.stats) {
    PlotSpec spec;
    spec.title = to_string(s.id);
    spec.x_label = "t";
    switch (s.id) {
      case StatisticId::kDegree: spec.y_label = "mean degree"; break;
      case StatisticId::kClustering: spec.y_label = "mean local clustering"; break;
      case StatisticId::kSpectral: spec.y_label = "largest normalised Laplacian eigenvalue"; break;
      default: spec.y_label = to_string(s.id);
    }
    std::vector<double> t(s.test_curve.mean.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i);
    spec.series.push_back({"test", "#1f77b4", t, s.test_curve.mean, s.test_curve.std});
    spec.series.push_back({"samples", "#d62728", t, s.sample_curve.mean, s.sample_curve.std});
    write(to_string(s.id) + ".svg", render_line_chart(spec));
    ++files;

    if (s.id == StatisticId::kDegree && !s.test_final_hist.empty()) {
      PlotSpec hist;
      hist.title = "degree distribution at the final timestep";
      hist.x_label = "degree";
      hist.y_label = "fraction of nodes";
      const std::size_t len = std::max(s.test_final_hist.size(), s.sample_final_hist.size());
      std::vector<double> d(len), a(len, 0.0), b(len, 0.0);
      for (std::size_t i = 0; i < len; ++i) {
        d[i] = static_cast<double>(i);
        if (i < s.test_final_hist.size()) a[i] = s.test_final_hist[i];
        if (i < s.sample_final_hist.size()) b[i] = s.sample_final_hist[i];
      }
      hist.series.push_back({"test", "#1f77b4", d, a, {}});
      hist.series.push_back({"samples", "#d62728", d, b, {}});
      write("degree_distribution.svg", render_line_chart(hist));
      ++files;
    }
  }
  std::cout << "wrote " << files << " plots to " << o.out_dir << "\n";
  return 0;
}

}  // namespace damnets::tools
