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

#ifndef DAMNETS_LAYERS_H_
#define DAMNETS_LAYERS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "damnets/autodiff.h"
#include "damnets/rng.h"

namespace damnets {

// Uniform01 view of an Rng, for parameter initialisation.
class RngUniform : public ad::Uniform01 {
 public:
  explicit RngUniform(Rng& rng) : rng_(rng) {}
  double operator()() override { return rng_.uniform(); }

 private:
  Rng& rng_;
};

// Affine map y = x W + b with W stored in x out. Rows of x are examples.
class Linear {
 public:
  Linear() = default;
  static Linear create(ad::ParameterStore& store, const std::string& name, int in, int out,
                       ad::Uniform01& rng, bool bias = true);

  ad::Var operator()(ad::Tape& tape, ad::Var x) const;

  int in() const { return in_; }
  int out() const { return out_; }
  ad::ParamId weight() const { return w_; }
  ad::ParamId bias() const { return b_; }

 private:
  ad::ParamId w_ = -1;
  ad::ParamId b_ = -1;
  int in_ = 0;
  int out_ = 0;
};

// One hidden ReLU layer: y = relu(x W1 + b1) W2 + b2.
class Mlp {
 public:
  Mlp() = default;
  static Mlp create(ad::ParameterStore& store, const std::string& name, int in, int hidden,
                    int out, ad::Uniform01& rng);

  ad::Var operator()(ad::Tape& tape, ad::Var x) const;

  int in() const { return l1_.in(); }
  int out() const { return l2_.out(); }

 private:
  Linear l1_;
  Linear l2_;
};

// Learned per-feature gain and bias after row standardisation.
class LayerNorm {
 public:
  LayerNorm() = default;
  static LayerNorm create(ad::ParameterStore& store, const std::string& name, int dim);
  ad::Var operator()(ad::Tape& tape, ad::Var x) const;

 private:
  ad::ParamId gain_ = -1;
  ad::ParamId bias_ = -1;
};

// (h, c) pair; both 1 x F.
struct LstmState {
  ad::Var h;
  ad::Var c;
};

// Standard LSTM cell. Gate blocks along the 4F output axis are ordered
// input, forget, candidate, output.
class LstmCell {
 public:
  LstmCell() = default;
  static LstmCell create(ad::ParameterStore& store, const std::string& name, int in,
                         int hidden, ad::Uniform01& rng);

  LstmState operator()(ad::Tape& tape, ad::Var x, const LstmState& state) const;
  // x W_x + b, for callers that feed the same input many times.
  ad::Var project_input(ad::Tape& tape, ad::Var x) const;
  LstmState step_projected(ad::Tape& tape, ad::Var x_proj, const LstmState& state) const;

  int in() const { return in_; }
  int hidden() const { return hidden_; }

 private:
  ad::ParamId wx_ = -1;
  ad::ParamId wh_ = -1;
  ad::ParamId b_ = -1;
  int in_ = 0;
  int hidden_ = 0;
};

// Binary TreeLSTM combine with one forget gate per child:
//   [i, f_l, f_r, o, u] = [h_l, h_r] W + b
//   c = sig(i) u~ + sig(f_l) c_l + sig(f_r) c_r,  u~ = tanh(u)
//   h = sig(o) tanh(c)
class TreeCell {
 public:
  TreeCell() = default;
  static TreeCell create(ad::ParameterStore& store, const std::string& name, int hidden,
                         ad::Uniform01& rng);

  LstmState operator()(ad::Tape& tape, const LstmState& left, const LstmState& right) const;

 private:
  Linear gates_;
  int hidden_ = 0;
};

enum class Activation { kTanh, kRelu, kIdentity };

ad::Var activate(Activation act, ad::Var x);

// Single graph attention layer with `heads` heads whose outputs are
// concatenated:
//   Z = X W,  e_ij = LeakyReLU_0.2(a_src . Z_i + a_dst . Z_j),
//   alpha = softmax over j in N(i) (self-loop included),  H = act(alpha Z).
class GatLayer {
 public:
  GatLayer() = default;
  static GatLayer create(ad::ParameterStore& store, const std::string& name, int in, int out,
                         int heads, ad::Uniform01& rng, Activation act = Activation::kTanh,
                         bool one_hot_input = false);

  // mask: n x n additive mask, 0 on edges and the diagonal, -inf elsewhere.
  ad::Var operator()(ad::Tape& tape, ad::Var x, ad::Var mask) const;
  // Same with X the n x n identity, without forming the product.
  ad::Var forward_identity(ad::Tape& tape, ad::Var mask) const;
  // Attention matrix of one head, for inspection.
  ad::Var attention(ad::Tape& tape, ad::Var z, ad::Var mask, int head) const;

  int in() const { return in_; }
  int out() const { return out_; }
  int heads() const { return static_cast<int>(w_.size()); }

 private:
  ad::Var combine(ad::Tape& tape, const std::vector<ad::Var>& z, ad::Var mask) const;

  std::vector<ad::ParamId> w_;
  std::vector<ad::ParamId> a_src_;
  std::vector<ad::ParamId> a_dst_;
  int in_ = 0;
  int out_ = 0;
  Activation act_ = Activation::kTanh;
};

// Additive attention mask for a graph with self-loops added.
std::vector<double> neighbourhood_mask(int n, const std::vector<uint8_t>& adjacency);

// Entry 2i = sin(pos / 10000^(2i/dim)), entry 2i+1 = cos of the same angle.
// Throws std::invalid_argument for odd dim.
std::vector<double> sinusoidal_pe(int pos, int dim);
// Rows 0..len-1 of the table above, len x dim row-major.
std::vector<double> sinusoidal_table(int len, int dim);

}  // namespace damnets

#endif  // DAMNETS_LAYERS_H_
