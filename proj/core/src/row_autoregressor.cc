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

#include "damnets/row_autoregressor.h"

#include <stdexcept>

namespace damnets {

using ad::Shape;
using ad::Tape;
using ad::Var;

std::string to_string(RowModelKind kind) {
  return kind == RowModelKind::kTransformer ? "transformer" : "lstm";
}

RowModelKind parse_row_model_kind(const std::string& text) {
  if (text == "transformer") return RowModelKind::kTransformer;
  if (text == "lstm") return RowModelKind::kLstm;
  throw std::invalid_argument("unknown row model '" + text + "' (expected transformer|lstm)");
}

namespace {

class TransformerRowStepper : public RowStepper {
 public:
  TransformerRowStepper(const Transformer& model, Tape& tape) : stepper_(model, tape) {}
  Var push(Var g) override { return stepper_.push(g); }

 private:
  TransformerStepper stepper_;
};

}  // namespace

TransformerRowModel::TransformerRowModel(ad::ParameterStore& store, const std::string& name,
                                         int dim, int layers, ad::Uniform01& rng) {
  TransformerOptions options;
  options.dim = dim;
  options.layers = layers;
  options.heads = dim % 4 == 0 ? 4 : (dim % 2 == 0 ? 2 : 1);
  options.ff_width = 4 * dim;
  options.positional = true;
  options.causal = true;
  model_ = Transformer::create(store, name, options, rng);
}

Var TransformerRowModel::forward(Tape& tape, Var g) const { return model_(tape, g); }

std::unique_ptr<RowStepper> TransformerRowModel::stepper(Tape& tape) const {
  return std::make_unique<TransformerRowStepper>(model_, tape);
}

class LstmRowStepper : public RowStepper {
 public:
  LstmRowStepper(const LstmRowModel& model, Tape& tape) : model_(model), tape_(tape) {
    for (std::size_t l = 0; l < model.cells_.size(); ++l) {
      Var zero = tape.zeros(Shape{1, model.dim_});
      states_.push_back({zero, zero});
    }
  }

  Var push(Var g) override {
    Var x = g;
    for (std::size_t l = 0; l < model_.cells_.size(); ++l) {
      states_[l] = model_.cells_[l](tape_, x, states_[l]);
      x = states_[l].h;
    }
    return x;
  }

 private:
  const LstmRowModel& model_;
  Tape& tape_;
  std::vector<LstmState> states_;
};

LstmRowModel::LstmRowModel(ad::ParameterStore& store, const std::string& name, int dim,
                           int layers, ad::Uniform01& rng)
    : dim_(dim) {
  if (layers < 1) throw std::invalid_argument("LstmRowModel: need at least one layer");
  for (int l = 0; l < layers; ++l) {
    cells_.push_back(LstmCell::create(store, name + ".lstm" + std::to_string(l), dim, dim, rng));
  }
}

Var LstmRowModel::forward(Tape& tape, Var g) const {
  LstmRowStepper stepper(*this, tape);
  std::vector<Var> out;
  out.reserve(static_cast<std::size_t>(g.rows()));
  for (int u = 0; u < g.rows(); ++u) out.push_back(stepper.push(ad::row(g, u)));
  return ad::concat_rows(out);
}

std::unique_ptr<RowStepper> LstmRowModel::stepper(Tape& tape) const {
  return std::make_unique<LstmRowStepper>(*this, tape);
}

std::unique_ptr<RowAutoregressor> make_row_model(RowModelKind kind, ad::ParameterStore& store,
                                                 const std::string& name, int dim, int layers,
                                                 ad::Uniform01& rng) {
  if (kind == RowModelKind::kTransformer) {
    return std::make_unique<TransformerRowModel>(store, name, dim, layers, rng);
  }
  return std::make_unique<LstmRowModel>(store, name, dim, layers, rng);
}

}  // namespace damnets
