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

#ifndef DAMNETS_TRAINING_H_
#define DAMNETS_TRAINING_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "damnets/graph.h"
#include "damnets/transition_model.h"

namespace damnets {

// One training example (G_{t-1}, delta_t).
struct Transition {
  Graph prev;
  DeltaMatrix delta;
};

std::vector<Transition> make_transitions(const std::vector<NetworkTimeSeries>& data);

struct TrainingMetadata {
  double best_val_nll = 0.0;   // mean per-transition NLL at best_epoch
  int best_epoch = 0;          // 1-based
  int epochs_run = 0;
  std::string stop_reason;     // "patience", "max_epochs" or "time_limit"
  uint64_t split_seed = 0;
  int num_train = 0;
  int num_val = 0;
};

struct EpochLog {
  int epoch = 0;
  double train_nll = 0.0;           // mean per transition
  double val_nll = 0.0;             // mean per transition
  double train_nll_per_decision = 0.0;
  double val_nll_per_decision = 0.0;
  double seconds = 0.0;             // cumulative wall time
};

struct TrainResult {
  TrainingMetadata meta;
  std::vector<EpochLog> history;
};

struct DatasetSplit {
  std::vector<Transition> train;
  std::vector<Transition> val;
};

// Seeded shuffle of all transitions; round(val_fraction * N) of them (at
// least one and at most N - 1 when N >= 2) go to validation.
DatasetSplit split_transitions(std::vector<Transition> all, double val_fraction, uint64_t seed);

// Mean per-transition NLL and total decision count over a set.
struct SetScore {
  double mean_nll = 0.0;
  double nll_per_decision = 0.0;
};
SetScore evaluate_nll(const TransitionModel& model, const std::vector<Transition>& set);

// Maximum-likelihood fit with Adam, global-norm clipping and early
// stopping on validation NLL. On return the model holds the parameters of
// the best validation epoch. Throws DivergenceError on a non-finite loss.
TrainResult train(TransitionModel& model, const std::vector<NetworkTimeSeries>& data,
                  const std::function<void(const EpochLog&)>& on_epoch = {});
TrainResult train_on_split(TransitionModel& model, const DatasetSplit& split,
                           const std::function<void(const EpochLog&)>& on_epoch = {});

}  // namespace damnets

#endif  // DAMNETS_TRAINING_H_
