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

#include "damnets/optim.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "damnets/error.h"

namespace damnets {

AdamState::AdamState(const ad::ParameterStore& store, AdamConfig cfg) : config(cfg) {
  m.reserve(store.size());
  v.reserve(store.size());
  for (const auto& p : store.all()) {
    m.emplace_back(p.tensor.shape);
    v.emplace_back(p.tensor.shape);
  }
}

void adam_step(ad::ParameterStore& store, const ad::Gradients& grads, AdamState& state) {
  if (grads.size() != store.size() || state.m.size() != store.size()) {
    throw std::invalid_argument("adam_step: gradient/state count does not match store");
  }
  for (std::size_t i = 0; i < grads.size(); ++i) {
    if (grads[i].shape != store[static_cast<ad::ParamId>(i)].tensor.shape) {
      throw std::invalid_argument("adam_step: gradient shape mismatch for " +
                                  store[static_cast<ad::ParamId>(i)].name);
    }
    for (double g : grads[i].values) {
      if (!std::isfinite(g)) {
        throw DivergenceError("non-finite gradient for parameter '" +
                              store[static_cast<ad::ParamId>(i)].name + "'");
      }
    }
  }

  const AdamConfig& c = state.config;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bc1 = 1.0 - std::pow(c.beta1, t);
  const double bc2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < grads.size(); ++i) {
    auto& param = store[static_cast<ad::ParamId>(i)];
    if (!param.trainable) continue;
    auto& theta = param.tensor.values;
    auto& m = state.m[i].values;
    auto& v = state.v[i].values;
    const auto& g = grads[i].values;
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const double gk = g[k] + c.weight_decay * theta[k];
      m[k] = c.beta1 * m[k] + (1.0 - c.beta1) * gk;
      v[k] = c.beta2 * v[k] + (1.0 - c.beta2) * gk * gk;
      const double m_hat = m[k] / bc1;
      const double v_hat = v[k] / bc2;
      theta[k] -= c.lr * m_hat / (std::sqrt(v_hat) + c.eps);
    }
  }
}

double global_norm(const ad::Gradients& grads) {
  double sq = 0.0;
  for (const auto& g : grads) {
    for (double x : g.values) sq += x * x;
  }
  return std::sqrt(sq);
}

double clip_global_norm(ad::Gradients& grads, double max_norm) {
  if (!(max_norm > 0.0)) throw std::invalid_argument("clip_global_norm: max_norm must be > 0");
  const double norm = global_norm(grads);
  if (norm > max_norm) {
    const double s = max_norm / norm;
    for (auto& g : grads) {
      for (double& x : g.values) x *= s;
    }
  }
  return norm;
}

}  // namespace damnets
