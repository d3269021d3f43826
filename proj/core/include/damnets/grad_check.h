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

#ifndef DAMNETS_GRAD_CHECK_H_
#define DAMNETS_GRAD_CHECK_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "damnets/autodiff.h"

namespace damnets {

struct GradCheckOptions {
  double step = 1e-5;
  // Componentwise error is |a - n| / max(|a|, |n|, floor).
  double floor = 1e-3;
  uint64_t seed = 12345;
  // Parameters of the store to perturb; empty means all of them.
  std::vector<ad::ParamId> params;
};

struct GradCheckResult {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::string worst;  // "input 0[3]" or "param W[7]"
  std::size_t checked = 0;
};

// Builds the function under test on a fresh tape. `inputs` are the
// differentiable input leaves; parameters come from tape.param().
using GradCheckFn = std::function<ad::Var(ad::Tape&, std::span<const ad::Var>)>;

// Compares reverse-mode gradients of L = sum(R .* f(inputs)) against
// central differences, where R is a fixed random weighting of f's output.
// Perturbs `store` in place and restores it before returning.
GradCheckResult grad_check(const GradCheckFn& fn, std::vector<ad::Tensor> inputs,
                           ad::ParameterStore* store, const GradCheckOptions& options = {});

}  // namespace damnets

#endif  // DAMNETS_GRAD_CHECK_H_
