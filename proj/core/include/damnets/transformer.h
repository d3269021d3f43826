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

#ifndef DAMNETS_TRANSFORMER_H_
#define DAMNETS_TRANSFORMER_H_

#include <string>
#include <vector>

#include "damnets/autodiff.h"
#include "damnets/layers.h"

namespace damnets {

class MultiHeadAttention {
 public:
  MultiHeadAttention() = default;
  static MultiHeadAttention create(ad::ParameterStore& store, const std::string& name,
                                   int dim, int heads, ad::Uniform01& rng);

  // queries: m x dim, keys/values: s x dim, mask: m x s additive or invalid.
  ad::Var operator()(ad::Tape& tape, ad::Var queries, ad::Var memory, ad::Var mask) const;

  ad::Var project_q(ad::Tape& tape, ad::Var x) const { return q_(tape, x); }
  ad::Var project_k(ad::Tape& tape, ad::Var x) const { return k_(tape, x); }
  ad::Var project_v(ad::Tape& tape, ad::Var x) const { return v_(tape, x); }
  // Attention on already projected q, k, v followed by the output map.
  ad::Var attend(ad::Tape& tape, ad::Var q, ad::Var k, ad::Var v, ad::Var mask) const;

 private:
  Linear q_, k_, v_, o_;
  int heads_ = 1;
  int dim_ = 0;
};

// Pre-norm block: x += SelfAttn(LN x); [x += CrossAttn(LN x, memory)];
// x += FF(LN x) with FF = Linear(dim, ff) -> ReLU -> Linear(ff, dim).
class TransformerBlock {
 public:
  TransformerBlock() = default;
  static TransformerBlock create(ad::ParameterStore& store, const std::string& name, int dim,
                                 int heads, int ff_width, bool cross, ad::Uniform01& rng);

  ad::Var operator()(ad::Tape& tape, ad::Var x, ad::Var self_mask, ad::Var memory) const;

  bool has_cross() const { return has_cross_; }

 private:
  friend class TransformerStepper;
  LayerNorm ln_self_, ln_cross_, ln_ff_;
  MultiHeadAttention self_, cross_;
  Mlp ff_;
  bool has_cross_ = false;
};

struct TransformerOptions {
  int dim = 32;
  int layers = 3;
  int heads = 4;
  int ff_width = 128;
  bool positional = true;  // add sinusoidal positions to the inputs
  bool causal = true;
  bool cross = false;  // blocks attend to an external memory
};

class TransformerStepper;

// Stack of blocks plus a final LayerNorm.
class Transformer {
 public:
  Transformer() = default;
  static Transformer create(ad::ParameterStore& store, const std::string& name,
                            const TransformerOptions& options, ad::Uniform01& rng);

  // x: k x dim. memory is required iff options.cross.
  ad::Var operator()(ad::Tape& tape, ad::Var x, ad::Var memory = {}) const;

  const TransformerOptions& options() const { return options_; }

 private:
  friend class TransformerStepper;
  TransformerOptions options_;
  std::vector<TransformerBlock> blocks_;
  LayerNorm final_;
};

// Incremental evaluation of a causal Transformer, one position at a time.
// push(x_k) returns output k; the result equals row k of the full pass.
class TransformerStepper {
 public:
  TransformerStepper(const Transformer& model, ad::Tape& tape, ad::Var memory = {});
  ad::Var push(ad::Var x);
  int position() const { return position_; }

 private:
  const Transformer& model_;
  ad::Tape& tape_;
  ad::Var memory_;
  std::vector<ad::Var> cross_k_, cross_v_;
  std::vector<std::vector<ad::Var>> keys_, values_;
  int position_ = 0;
};

// -inf strictly above the diagonal.
std::vector<double> causal_mask(int k);

}  // namespace damnets

#endif  // DAMNETS_TRANSFORMER_H_
