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

#ifndef DAMNETS_TRANSITION_MODEL_H_
#define DAMNETS_TRANSITION_MODEL_H_

#include <memory>
#include <string>

#include "damnets/autodiff.h"
#include "damnets/config.h"
#include "damnets/graph.h"
#include "damnets/rng.h"

namespace damnets {

struct TransitionScore {
  ad::Var log_prob;    // 1 x 1
  int decisions = 0;   // Bernoulli terms in log_prob
};

// A learned Markov kernel p(G_t | G_{t-1}) on a fixed node count.
class TransitionModel {
 public:
  virtual ~TransitionModel() = default;

  // "damnets" or "age-d"; stored in checkpoints.
  virtual std::string kind() const = 0;
  virtual TransitionScore score(ad::Tape& tape, const Graph& prev,
                                const DeltaMatrix& delta) const = 0;
  virtual Graph sample_transition(const Graph& prev, Rng& rng) const = 0;

  int n() const { return n_; }
  const ModelConfig& config() const { return config_; }
  ad::ParameterStore& params() { return store_; }
  const ad::ParameterStore& params() const { return store_; }

  // -log p(delta | prev), evaluated without keeping the tape.
  double transition_nll(const Graph& prev, const DeltaMatrix& delta) const;
  // T successive transitions from g0; the result has T + 1 graphs.
  NetworkTimeSeries sample_series(const Graph& g0, int steps, Rng& rng) const;

 protected:
  TransitionModel(int n, const ModelConfig& config) : n_(n), config_(config) {}
  void check_graph(const Graph& g) const;

  int n_;
  ModelConfig config_;
  ad::ParameterStore store_;
};

// Fresh model with parameters initialised from config.seed.
std::unique_ptr<TransitionModel> make_model(const std::string& kind, int n,
                                            const ModelConfig& config);

}  // namespace damnets

#endif  // DAMNETS_TRANSITION_MODEL_H_
