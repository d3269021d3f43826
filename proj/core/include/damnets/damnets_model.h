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

#ifndef DAMNETS_DAMNETS_MODEL_H_
#define DAMNETS_DAMNETS_MODEL_H_

#include <memory>
#include <vector>

#include "damnets/layers.h"
#include "damnets/row_autoregressor.h"
#include "damnets/transition_model.h"
#include "damnets/tree_decoder.h"

namespace damnets {

// GAT encoder over the previous graph, row trees for the lower-triangular
// delta and a causal row model chaining the rows.
//
// Row u (0-based) has width u. Its root top state is
//   (MLP_cat([h_row(u-1), H_u]), 0) with h_row(-1) = 0,
// and h_row(u) is the row model's output at position u over the h parts
// of g_0 .. g_u.
class DamnetsModel : public TransitionModel {
 public:
  DamnetsModel(int n, const ModelConfig& config);

  std::string kind() const override { return "damnets"; }
  TransitionScore score(ad::Tape& tape, const Graph& prev,
                        const DeltaMatrix& delta) const override;
  Graph sample_transition(const Graph& prev, Rng& rng) const override;

  // n x F node embeddings of prev.
  ad::Var encode(ad::Tape& tape, const Graph& prev) const;
  LstmState row_context(ad::Tape& tape, ad::Var h_row_prev, ad::Var node_embedding) const;

  // Sampled delta (before it is applied to prev). When log_prob is set it
  // receives the log-probability accumulated by the sampler.
  DeltaMatrix sample_delta(const Graph& prev, Rng& rng, double* log_prob = nullptr) const;

  const TreeDecoder& decoder() const { return decoder_; }

 private:
  std::vector<GatLayer> gat_;
  Mlp mlp_cat_;
  std::unique_ptr<RowAutoregressor> row_model_;
  TreeDecoder decoder_;
};

}  // namespace damnets

#endif  // DAMNETS_DAMNETS_MODEL_H_
