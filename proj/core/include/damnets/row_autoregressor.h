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

#ifndef DAMNETS_ROW_AUTOREGRESSOR_H_
#define DAMNETS_ROW_AUTOREGRESSOR_H_

#include <memory>
#include <string>
#include <vector>

#include "damnets/autodiff.h"
#include "damnets/layers.h"
#include "damnets/transformer.h"

namespace damnets {

enum class RowModelKind { kTransformer, kLstm };

std::string to_string(RowModelKind kind);
RowModelKind parse_row_model_kind(const std::string& text);

// Sequential state for generation: push(g_u) returns h_u^row.
class RowStepper {
 public:
  virtual ~RowStepper() = default;
  virtual ad::Var push(ad::Var g) = 0;
};

// Causal sequence model over row embeddings g_0, g_1, ... (each 1 x F).
// Output row u depends on inputs 0..u only.
class RowAutoregressor {
 public:
  virtual ~RowAutoregressor() = default;
  // g: k x F, returns k x F.
  virtual ad::Var forward(ad::Tape& tape, ad::Var g) const = 0;
  virtual std::unique_ptr<RowStepper> stepper(ad::Tape& tape) const = 0;
};

class TransformerRowModel : public RowAutoregressor {
 public:
  TransformerRowModel(ad::ParameterStore& store, const std::string& name, int dim, int layers,
                      ad::Uniform01& rng);
  ad::Var forward(ad::Tape& tape, ad::Var g) const override;
  std::unique_ptr<RowStepper> stepper(ad::Tape& tape) const override;

 private:
  Transformer model_;
};

class LstmRowModel : public RowAutoregressor {
 public:
  LstmRowModel(ad::ParameterStore& store, const std::string& name, int dim, int layers,
               ad::Uniform01& rng);
  ad::Var forward(ad::Tape& tape, ad::Var g) const override;
  std::unique_ptr<RowStepper> stepper(ad::Tape& tape) const override;

 private:
  friend class LstmRowStepper;
  std::vector<LstmCell> cells_;
  int dim_;
};

std::unique_ptr<RowAutoregressor> make_row_model(RowModelKind kind, ad::ParameterStore& store,
                                                 const std::string& name, int dim, int layers,
                                                 ad::Uniform01& rng);

}  // namespace damnets

#endif  // DAMNETS_ROW_AUTOREGRESSOR_H_
