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

#include "damnets/transformer.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace damnets {

using ad::Shape;
using ad::Tape;
using ad::Var;

std::vector<double> causal_mask(int k) {
  std::vector<double> mask(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      mask[static_cast<std::size_t>(i) * k + j] = -std::numeric_limits<double>::infinity();
    }
  }
  return mask;
}

MultiHeadAttention MultiHeadAttention::create(ad::ParameterStore& store,
                                              const std::string& name, int dim, int heads,
                                              ad::Uniform01& rng) {
  if (heads < 1 || dim % heads != 0) {
    throw std::invalid_argument("MultiHeadAttention: heads must divide dim");
  }
  MultiHeadAttention a;
  a.heads_ = heads;
  a.dim_ = dim;
  a.q_ = Linear::create(store, name + ".q", dim, dim, rng);
  a.k_ = Linear::create(store, name + ".k", dim, dim, rng);
  a.v_ = Linear::create(store, name + ".v", dim, dim, rng);
  a.o_ = Linear::create(store, name + ".o", dim, dim, rng);
  return a;
}

Var MultiHeadAttention::attend(Tape& tape, Var q, Var k, Var v, Var mask) const {
  const int d = dim_ / heads_;
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Var> outs;
  outs.reserve(static_cast<std::size_t>(heads_));
  for (int h = 0; h < heads_; ++h) {
    Var qh = ad::slice_cols(q, h * d, d);
    Var kh = ad::slice_cols(k, h * d, d);
    Var vh = ad::slice_cols(v, h * d, d);
    Var scores = ad::scale(ad::matmul(qh, ad::transpose(kh)), scale);
    Var p = mask.valid() ? ad::softmax_rows(scores, mask) : ad::softmax_rows(scores);
    outs.push_back(ad::matmul(p, vh));
  }
  Var joined = heads_ == 1 ? outs[0] : ad::concat_cols(outs);
  return o_(tape, joined);
}

Var MultiHeadAttention::operator()(Tape& tape, Var queries, Var memory, Var mask) const {
  return attend(tape, q_(tape, queries), k_(tape, memory), v_(tape, memory), mask);
}

TransformerBlock TransformerBlock::create(ad::ParameterStore& store, const std::string& name,
                                          int dim, int heads, int ff_width, bool cross,
                                          ad::Uniform01& rng) {
  TransformerBlock b;
  b.has_cross_ = cross;
  b.ln_self_ = LayerNorm::create(store, name + ".ln_self", dim);
  b.self_ = MultiHeadAttention::create(store, name + ".self", dim, heads, rng);
  if (cross) {
    b.ln_cross_ = LayerNorm::create(store, name + ".ln_cross", dim);
    b.cross_ = MultiHeadAttention::create(store, name + ".cross", dim, heads, rng);
  }
  b.ln_ff_ = LayerNorm::create(store, name + ".ln_ff", dim);
  b.ff_ = Mlp::create(store, name + ".ff", dim, ff_width, dim, rng);
  return b;
}

Var TransformerBlock::operator()(Tape& tape, Var x, Var self_mask, Var memory) const {
  Var a = ln_self_(tape, x);
  x = ad::add(x, self_(tape, a, a, self_mask));
  if (has_cross_) {
    if (!memory.valid()) throw std::invalid_argument("TransformerBlock: missing memory");
    x = ad::add(x, cross_(tape, ln_cross_(tape, x), memory, Var{}));
  }
  return ad::add(x, ff_(tape, ln_ff_(tape, x)));
}

Transformer Transformer::create(ad::ParameterStore& store, const std::string& name,
                                const TransformerOptions& options, ad::Uniform01& rng) {
  if (options.positional && options.dim % 2 != 0) {
    throw std::invalid_argument("Transformer: positional encoding needs an even width");
  }
  Transformer t;
  t.options_ = options;
  for (int l = 0; l < options.layers; ++l) {
    t.blocks_.push_back(TransformerBlock::create(store, name + ".block" + std::to_string(l),
                                                 options.dim, options.heads, options.ff_width,
                                                 options.cross, rng));
  }
  t.final_ = LayerNorm::create(store, name + ".ln_final", options.dim);
  return t;
}

Var Transformer::operator()(Tape& tape, Var x, Var memory) const {
  const int k = x.rows();
  if (k == 0) throw std::invalid_argument("Transformer: empty sequence");
  if (x.cols() != options_.dim) throw std::invalid_argument("Transformer: width mismatch");
  if (options_.positional) {
    x = ad::add(x, tape.constant(Shape{k, options_.dim}, sinusoidal_table(k, options_.dim)));
  }
  Var mask = options_.causal ? tape.constant(Shape{k, k}, causal_mask(k)) : Var{};
  for (const auto& block : blocks_) x = block(tape, x, mask, memory);
  return final_(tape, x);
}

TransformerStepper::TransformerStepper(const Transformer& model, Tape& tape, Var memory)
    : model_(model), tape_(tape), memory_(memory) {
  if (!model.options_.causal) {
    throw std::invalid_argument("TransformerStepper: model is not causal");
  }
  keys_.resize(model.blocks_.size());
  values_.resize(model.blocks_.size());
  if (model.options_.cross) {
    if (!memory.valid()) throw std::invalid_argument("TransformerStepper: missing memory");
    // Memory projections are shared by every position.
    for (const auto& block : model.blocks_) {
      cross_k_.push_back(block.cross_.project_k(tape, memory));
      cross_v_.push_back(block.cross_.project_v(tape, memory));
    }
  }
}

Var TransformerStepper::push(Var x) {
  const int dim = model_.options_.dim;
  if (x.rows() != 1 || x.cols() != dim) {
    throw std::invalid_argument("TransformerStepper: expected a 1 x dim row");
  }
  if (model_.options_.positional) {
    x = ad::add(x, tape_.constant(Shape{1, dim}, sinusoidal_pe(position_, dim)));
  }
  for (std::size_t l = 0; l < model_.blocks_.size(); ++l) {
    const auto& block = model_.blocks_[l];
    Var a = block.ln_self_(tape_, x);
    keys_[l].push_back(block.self_.project_k(tape_, a));
    values_[l].push_back(block.self_.project_v(tape_, a));
    Var k = ad::concat_rows(keys_[l]);
    Var v = ad::concat_rows(values_[l]);
    x = ad::add(x, block.self_.attend(tape_, block.self_.project_q(tape_, a), k, v, Var{}));
    if (block.has_cross_) {
      Var q = block.cross_.project_q(tape_, block.ln_cross_(tape_, x));
      x = ad::add(x, block.cross_.attend(tape_, q, cross_k_[l], cross_v_[l], Var{}));
    }
    x = ad::add(x, block.ff_(tape_, block.ln_ff_(tape_, x)));
  }
  ++position_;
  return model_.final_(tape_, x);
}

}  // namespace damnets
