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

#include "damnets/grad_check.h"

#include <algorithm>
#include <cmath>

#include "damnets/rng.h"

namespace damnets {
namespace {

class Evaluator {
 public:
  Evaluator(const GradCheckFn& fn, const std::vector<ad::Tensor>& inputs,
            const ad::ParameterStore* store, uint64_t seed)
      : fn_(fn), inputs_(inputs), store_(store), seed_(seed) {}

  // Builds L on `tape`; also returns the input leaves.
  ad::Var build(ad::Tape& tape, std::vector<ad::Var>& leaves) {
    leaves.clear();
    for (const auto& t : inputs_) leaves.push_back(tape.input(t.shape, t.values));
    ad::Var out = fn_(tape, leaves);
    if (weights_.empty()) {
      Rng rng(seed_);
      weights_.resize(out.shape().size());
      for (double& w : weights_) w = 2.0 * rng.uniform() - 1.0;
    }
    return ad::sum(ad::mul(out, tape.constant(out.shape(), weights_)));
  }

  double value() {
    ad::Tape tape(store_);
    std::vector<ad::Var> leaves;
    return build(tape, leaves).item();
  }

  std::vector<ad::Tensor>& inputs() { return inputs_; }

 private:
  const GradCheckFn& fn_;
  std::vector<ad::Tensor> inputs_;
  const ad::ParameterStore* store_;
  uint64_t seed_;
  std::vector<double> weights_;
};

}  // namespace

GradCheckResult grad_check(const GradCheckFn& fn, std::vector<ad::Tensor> inputs,
                           ad::ParameterStore* store, const GradCheckOptions& options) {
  Evaluator eval(fn, inputs, store, options.seed);

  std::vector<std::vector<double>> input_grads;
  ad::Gradients param_grads;
  {
    ad::Tape tape(store);
    std::vector<ad::Var> leaves;
    ad::Var loss = eval.build(tape, leaves);
    param_grads = tape.backward(loss);
    for (ad::Var v : leaves) {
      auto g = tape.grad(v);
      input_grads.emplace_back(g.begin(), g.end());
    }
  }

  GradCheckResult result;
  const double h = options.step;
  auto compare = [&](double analytic, double numeric, const std::string& where) {
    const double abs_err = std::abs(analytic - numeric);
    const double rel =
        abs_err / std::max({std::abs(analytic), std::abs(numeric), options.floor});
    result.max_abs_error = std::max(result.max_abs_error, abs_err);
    if (result.checked == 0 || rel > result.max_rel_error) {
      result.max_rel_error = rel;
      result.worst = where;
    }
    ++result.checked;
  };

  for (std::size_t i = 0; i < eval.inputs().size(); ++i) {
    auto& values = eval.inputs()[i].values;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double saved = values[k];
      values[k] = saved + h;
      const double up = eval.value();
      values[k] = saved - h;
      const double down = eval.value();
      values[k] = saved;
      compare(input_grads[i][k], (up - down) / (2.0 * h),
              "input " + std::to_string(i) + "[" + std::to_string(k) + "]");
    }
  }

  if (store) {
    std::vector<ad::ParamId> ids = options.params;
    if (ids.empty()) {
      for (std::size_t i = 0; i < store->size(); ++i) ids.push_back(static_cast<ad::ParamId>(i));
    }
    for (ad::ParamId id : ids) {
      auto& values = (*store)[id].tensor.values;
      for (std::size_t k = 0; k < values.size(); ++k) {
        const double saved = values[k];
        values[k] = saved + h;
        const double up = eval.value();
        values[k] = saved - h;
        const double down = eval.value();
        values[k] = saved;
        compare(param_grads[static_cast<std::size_t>(id)].values[k], (up - down) / (2.0 * h),
                "param " + (*store)[id].name + "[" + std::to_string(k) + "]");
      }
    }
  }
  return result;
}

}  // namespace damnets
