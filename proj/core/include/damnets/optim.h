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

#ifndef DAMNETS_OPTIM_H_
#define DAMNETS_OPTIM_H_

#include <cstdint>
#include <vector>

#include "damnets/autodiff.h"

namespace damnets {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  // L2 coefficient; weight_decay * theta is added to the gradient before
  // the moment updates.
  double weight_decay = 5e-4;
};

struct AdamState {
  AdamConfig config;
  std::vector<ad::Tensor> m;
  std::vector<ad::Tensor> v;
  int64_t step = 0;

  AdamState() = default;
  AdamState(const ad::ParameterStore& store, AdamConfig cfg);
};

// One bias-corrected Adam update of every trainable parameter. Throws
// DivergenceError, leaving parameters and state untouched, if any gradient
// entry is NaN or infinite.
void adam_step(ad::ParameterStore& store, const ad::Gradients& grads, AdamState& state);

double global_norm(const ad::Gradients& grads);

// Scales all gradients by max_norm / norm when the global l2 norm exceeds
// max_norm. Returns the norm measured before clipping.
double clip_global_norm(ad::Gradients& grads, double max_norm);

}  // namespace damnets

#endif  // DAMNETS_OPTIM_H_
