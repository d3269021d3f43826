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

#include "damnets/layers.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace damnets {

using ad::Shape;
using ad::Tape;
using ad::Var;

Linear Linear::create(ad::ParameterStore& store, const std::string& name, int in, int out,
                      ad::Uniform01& rng, bool bias) {
  Linear l;
  l.in_ = in;
  l.out_ = out;
  l.w_ = store.add_uniform(name + ".W", Shape{in, out}, in, rng);
  if (bias) l.b_ = store.add(name + ".b", Shape{1, out});
  return l;
}

Var Linear::operator()(Tape& tape, Var x) const {
  if (x.cols() != in_) {
    throw std::invalid_argument("Linear: expected " + std::to_string(in_) +
                                " input columns, got " + std::to_string(x.cols()));
  }
  Var y = ad::matmul(x, tape.param(w_));
  return b_ >= 0 ? ad::add(y, tape.param(b_)) : y;
}

Mlp Mlp::create(ad::ParameterStore& store, const std::string& name, int in, int hidden,
                int out, ad::Uniform01& rng) {
  Mlp m;
  m.l1_ = Linear::create(store, name + ".0", in, hidden, rng);
  m.l2_ = Linear::create(store, name + ".1", hidden, out, rng);
  return m;
}

Var Mlp::operator()(Tape& tape, Var x) const {
  return l2_(tape, ad::relu(l1_(tape, x)));
}

LayerNorm LayerNorm::create(ad::ParameterStore& store, const std::string& name, int dim) {
  LayerNorm ln;
  ln.gain_ = store.add(name + ".gain", Shape{1, dim}, 1.0);
  ln.bias_ = store.add(name + ".bias", Shape{1, dim});
  return ln;
}

Var LayerNorm::operator()(Tape& tape, Var x) const {
  return ad::add(ad::mul(ad::layer_norm_rows(x), tape.param(gain_)), tape.param(bias_));
}

LstmCell LstmCell::create(ad::ParameterStore& store, const std::string& name, int in,
                          int hidden, ad::Uniform01& rng) {
  LstmCell cell;
  cell.in_ = in;
  cell.hidden_ = hidden;
  cell.wx_ = store.add_uniform(name + ".Wx", Shape{in, 4 * hidden}, in + hidden, rng);
  cell.wh_ = store.add_uniform(name + ".Wh", Shape{hidden, 4 * hidden}, in + hidden, rng);
  cell.b_ = store.add(name + ".b", Shape{1, 4 * hidden});
  return cell;
}

Var LstmCell::project_input(Tape& tape, Var x) const {
  if (x.cols() != in_) {
    throw std::invalid_argument("LstmCell: expected input width " + std::to_string(in_) +
                                ", got " + std::to_string(x.cols()));
  }
  return ad::add(ad::matmul(x, tape.param(wx_)), tape.param(b_));
}

LstmState LstmCell::step_projected(Tape& tape, Var x_proj, const LstmState& state) const {
  if (state.h.cols() != hidden_ || state.c.cols() != hidden_) {
    throw std::invalid_argument("LstmCell: state width mismatch");
  }
  const int F = hidden_;
  Var gates = ad::add(x_proj, ad::matmul(state.h, tape.param(wh_)));
  Var i = ad::sigmoid(ad::slice_cols(gates, 0, F));
  Var f = ad::sigmoid(ad::slice_cols(gates, F, F));
  Var g = ad::tanh(ad::slice_cols(gates, 2 * F, F));
  Var o = ad::sigmoid(ad::slice_cols(gates, 3 * F, F));
  Var c = ad::add(ad::mul(f, state.c), ad::mul(i, g));
  return {ad::mul(o, ad::tanh(c)), c};
}

LstmState LstmCell::operator()(Tape& tape, Var x, const LstmState& state) const {
  return step_projected(tape, project_input(tape, x), state);
}

TreeCell TreeCell::create(ad::ParameterStore& store, const std::string& name, int hidden,
                          ad::Uniform01& rng) {
  TreeCell cell;
  cell.hidden_ = hidden;
  cell.gates_ = Linear::create(store, name, 2 * hidden, 5 * hidden, rng);
  return cell;
}

LstmState TreeCell::operator()(Tape& tape, const LstmState& left,
                               const LstmState& right) const {
  const int F = hidden_;
  if (left.h.cols() != F || right.h.cols() != F || left.c.cols() != F ||
      right.c.cols() != F) {
    throw std::invalid_argument("TreeCell: child state width mismatch");
  }
  Var gates = gates_(tape, ad::concat_cols({left.h, right.h}));
  Var i = ad::sigmoid(ad::slice_cols(gates, 0, F));
  Var fl = ad::sigmoid(ad::slice_cols(gates, F, F));
  Var fr = ad::sigmoid(ad::slice_cols(gates, 2 * F, F));
  Var o = ad::sigmoid(ad::slice_cols(gates, 3 * F, F));
  Var u = ad::tanh(ad::slice_cols(gates, 4 * F, F));
  Var c = ad::add(ad::add(ad::mul(i, u), ad::mul(fl, left.c)), ad::mul(fr, right.c));
  return {ad::mul(o, ad::tanh(c)), c};
}

Var activate(Activation act, Var x) {
  switch (act) {
    case Activation::kTanh:
      return ad::tanh(x);
    case Activation::kRelu:
      return ad::relu(x);
    case Activation::kIdentity:
      return x;
  }
  return x;
}

GatLayer GatLayer::create(ad::ParameterStore& store, const std::string& name, int in,
                          int out, int heads, ad::Uniform01& rng, Activation act,
                          bool one_hot_input) {
  if (heads < 1 || out % heads != 0) {
    throw std::invalid_argument("GatLayer: head count must divide the output width");
  }
  GatLayer g;
  g.in_ = in;
  g.out_ = out;
  g.act_ = act;
  const int d = out / heads;
  for (int h = 0; h < heads; ++h) {
    const std::string p = name + ".head" + std::to_string(h);
    // A one-hot row selects a single row of W.
    g.w_.push_back(store.add_uniform(p + ".W", Shape{in, d}, one_hot_input ? 1 : in, rng));
    g.a_src_.push_back(store.add_uniform(p + ".a_src", Shape{d, 1}, 2 * d, rng));
    g.a_dst_.push_back(store.add_uniform(p + ".a_dst", Shape{d, 1}, 2 * d, rng));
  }
  return g;
}

Var GatLayer::attention(Tape& tape, Var z, Var mask, int head) const {
  const auto h = static_cast<std::size_t>(head);
  Var src = ad::matmul(z, tape.param(a_src_[h]));               // n x 1
  Var dst = ad::transpose(ad::matmul(z, tape.param(a_dst_[h])));  // 1 x n
  Var e = ad::leaky_relu(ad::add(src, dst), 0.2);
  return ad::softmax_rows(e, mask);
}

Var GatLayer::combine(Tape& tape, const std::vector<Var>& z, Var mask) const {
  std::vector<Var> outs;
  outs.reserve(z.size());
  for (std::size_t h = 0; h < z.size(); ++h) {
    Var alpha = attention(tape, z[h], mask, static_cast<int>(h));
    outs.push_back(ad::matmul(alpha, z[h]));
  }
  Var agg = outs.size() == 1 ? outs[0] : ad::concat_cols(outs);
  return activate(act_, agg);
}

Var GatLayer::operator()(Tape& tape, Var x, Var mask) const {
  if (x.cols() != in_) {
    throw std::invalid_argument("GatLayer: expected " + std::to_string(in_) +
                                " feature columns, got " + std::to_string(x.cols()));
  }
  if (mask.rows() != x.rows() || mask.cols() != x.rows()) {
    throw std::invalid_argument("GatLayer: mask must be n x n");
  }
  std::vector<Var> z;
  for (ad::ParamId w : w_) z.push_back(ad::matmul(x, tape.param(w)));
  return combine(tape, z, mask);
}

Var GatLayer::forward_identity(Tape& tape, Var mask) const {
  if (mask.rows() != in_ || mask.cols() != in_) {
    throw std::invalid_argument("GatLayer: identity features need an " +
                                std::to_string(in_) + " x " + std::to_string(in_) + " mask");
  }
  std::vector<Var> z;
  for (ad::ParamId w : w_) z.push_back(tape.param(w));
  return combine(tape, z, mask);
}

std::vector<double> neighbourhood_mask(int n, const std::vector<uint8_t>& adjacency) {
  if (adjacency.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("neighbourhood_mask: adjacency must be n x n");
  }
  const double blocked = -std::numeric_limits<double>::infinity();
  std::vector<double> mask(adjacency.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      mask[k] = (i == j || adjacency[k]) ? 0.0 : blocked;
    }
  }
  return mask;
}

std::vector<double> sinusoidal_pe(int pos, int dim) {
  if (dim <= 0 || dim % 2 != 0) {
    throw std::invalid_argument("sinusoidal_pe: dim must be positive and even");
  }
  std::vector<double> pe(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim / 2; ++i) {
    const double angle =
        pos / std::pow(10000.0, static_cast<double>(2 * i) / static_cast<double>(dim));
    pe[2 * static_cast<std::size_t>(i)] = std::sin(angle);
    pe[2 * static_cast<std::size_t>(i) + 1] = std::cos(angle);
  }
  return pe;
}

std::vector<double> sinusoidal_table(int len, int dim) {
  std::vector<double> table;
  table.reserve(static_cast<std::size_t>(len) * dim);
  for (int p = 0; p < len; ++p) {
    auto row = sinusoidal_pe(p, dim);
    table.insert(table.end(), row.begin(), row.end());
  }
  return table;
}

}  // namespace damnets
