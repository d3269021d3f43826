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

#include "damnets/training.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "damnets/error.h"
#include "damnets/optim.h"
#include "damnets/rng.h"

namespace damnets {

std::vector<Transition> make_transitions(const std::vector<NetworkTimeSeries>& data) {
  std::vector<Transition> out;
  for (const auto& series : data) {
    for (std::size_t t = 1; t < series.graphs.size(); ++t) {
      out.push_back({series.graphs[t - 1], compute_delta(series.graphs[t - 1], series.graphs[t])});
    }
  }
  return out;
}

DatasetSplit split_transitions(std::vector<Transition> all, double val_fraction, uint64_t seed) {
  const std::size_t total = all.size();
  std::size_t num_val = 0;
  if (total >= 2) {
    num_val = static_cast<std::size_t>(std::llround(val_fraction * static_cast<double>(total)));
    num_val = std::clamp<std::size_t>(num_val, 1, total - 1);
  }
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  DatasetSplit split;
  for (std::size_t i = 0; i < total; ++i) {
    auto& dst = i < num_val ? split.val : split.train;
    dst.push_back(std::move(all[order[i]]));
  }
  return split;
}

SetScore evaluate_nll(const TransitionModel& model, const std::vector<Transition>& set) {
  SetScore s;
  if (set.empty()) return s;
  double total = 0.0;
  long long decisions = 0;
  for (const auto& ex : set) {
    ad::Tape tape(&model.params());
    TransitionScore score = model.score(tape, ex.prev, ex.delta);
    total -= score.log_prob.item();
    decisions += score.decisions;
  }
  s.mean_nll = total / static_cast<double>(set.size());
  s.nll_per_decision = decisions > 0 ? total / static_cast<double>(decisions) : 0.0;
  return s;
}

TrainResult train(TransitionModel& model, const std::vector<NetworkTimeSeries>& data,
                  const std::function<void(const EpochLog&)>& on_epoch) {
  for (const auto& s : data) {
    if (s.n != model.n()) {
      throw GraphError("series '" + s.id + "' has n=" + std::to_string(s.n) +
                       " but the model has n=" + std::to_string(model.n()));
    }
  }
  auto all = make_transitions(data);
  if (all.empty()) throw Error("train: dataset has no transition pairs");
  const uint64_t split_seed = derive_seed(model.config().seed, 0x5b1);
  DatasetSplit split = split_transitions(std::move(all), model.config().val_fraction, split_seed);
  TrainResult result = train_on_split(model, split, on_epoch);
  result.meta.split_seed = split_seed;
  return result;
}

TrainResult train_on_split(TransitionModel& model, const DatasetSplit& split,
                           const std::function<void(const EpochLog&)>& on_epoch) {
  const ModelConfig& cfg = model.config();
  if (split.train.empty()) throw Error("train: empty training set");
  ad::ParameterStore& store = model.params();

  AdamConfig adam_cfg;
  adam_cfg.lr = cfg.lr;
  adam_cfg.weight_decay = cfg.weight_decay;
  AdamState adam(store, adam_cfg);
  Rng order_rng(derive_seed(cfg.seed, 0x0bde));

  TrainResult result;
  result.meta.num_train = static_cast<int>(split.train.size());
  result.meta.num_val = static_cast<int>(split.val.size());
  result.meta.stop_reason = "max_epochs";

  std::vector<ad::Tensor> best;
  double best_val = std::numeric_limits<double>::infinity();
  int since_best = 0;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  std::vector<std::size_t> order(split.train.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    order_rng.shuffle(order);
    double train_total = 0.0;
    long long train_decisions = 0;
    for (std::size_t begin = 0; begin < order.size();
         begin += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end =
          std::min(order.size(), begin + static_cast<std::size_t>(cfg.batch_size));
      const double weight = 1.0 / static_cast<double>(end - begin);
      ad::Gradients grads = ad::zero_gradients(store);
      // One tape per example: memory is bounded by a single transition and
      // the batch gradient is accumulated in a fixed order.
      for (std::size_t i = begin; i < end; ++i) {
        const Transition& ex = split.train[order[i]];
        ad::Tape tape(&store);
        TransitionScore score = model.score(tape, ex.prev, ex.delta);
        const double nll = -score.log_prob.item();
        if (!std::isfinite(nll)) {
          throw DivergenceError("non-finite training loss at epoch " + std::to_string(epoch));
        }
        train_total += nll;
        train_decisions += score.decisions;
        ad::Gradients g = tape.backward(ad::scale(score.log_prob, -1.0));
        ad::accumulate(grads, g, weight);
      }
      clip_global_norm(grads, cfg.clip_norm);
      adam_step(store, grads, adam);
    }

    EpochLog log;
    log.epoch = epoch;
    log.train_nll = train_total / static_cast<double>(split.train.size());
    log.train_nll_per_decision =
        train_decisions > 0 ? train_total / static_cast<double>(train_decisions) : 0.0;
    // Without a validation set the training loss drives model selection.
    if (!split.val.empty()) {
      const SetScore val = evaluate_nll(model, split.val);
      log.val_nll = val.mean_nll;
      log.val_nll_per_decision = val.nll_per_decision;
    } else {
      const SetScore tr = evaluate_nll(model, split.train);
      log.val_nll = tr.mean_nll;
      log.val_nll_per_decision = tr.nll_per_decision;
    }
    log.seconds = elapsed();
    result.history.push_back(log);
    result.meta.epochs_run = epoch;
    if (on_epoch) on_epoch(log);

    if (!std::isfinite(log.val_nll)) {
      throw DivergenceError("non-finite validation loss at epoch " + std::to_string(epoch));
    }
    if (log.val_nll < best_val) {
      best_val = log.val_nll;
      result.meta.best_epoch = epoch;
      best.clear();
      for (const auto& p : store.all()) best.push_back(p.tensor);
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      result.meta.stop_reason = "patience";
      break;
    }
    if (cfg.max_train_seconds > 0.0 && log.seconds >= cfg.max_train_seconds) {
      result.meta.stop_reason = "time_limit";
      break;
    }
  }

  for (std::size_t i = 0; i < best.size(); ++i) {
    store[static_cast<ad::ParamId>(i)].tensor = best[i];
  }
  result.meta.best_val_nll = best_val;
  return result;
}

}  // namespace damnets
