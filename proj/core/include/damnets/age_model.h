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

#ifndef DAMNETS_AGE_MODEL_H_
#define DAMNETS_AGE_MODEL_H_

#include <cstdint>
#include <vector>

#include "damnets/layers.h"
#include "damnets/transformer.h"
#include "damnets/transition_model.h"

namespace damnets {

// XOR of prev's adjacency with a symmetric 0/1 matrix (n x n, row-major,
// zero diagonal). Throws GraphError on a shape, symmetry or diagonal
// violation.
Graph mod2_apply(const Graph& prev, const std::vector<uint8_t>& absdelta);

// Symmetric matrix from the strictly lower triangle of `lower`; entries on
// or above the diagonal are ignored.
std::vector<uint8_t> symmetrize_lower(int n, const std::vector<uint8_t>& lower);

// Delta-parameterised attention baseline. An encoder over the rows of
// A(t-1) and a causal decoder with cross-attention emit the rows of |delta|;
// entries within a row are independent Bernoullis. No positional encodings.
// Decoder input at position u is a learned start row for u = 0 and row u-1
// of |delta| (lower triangle) otherwise.
class AgeModel : public TransitionModel {
 public:
  AgeModel(int n, const ModelConfig& config);

  std::string kind() const override { return "age-d"; }
  TransitionScore score(ad::Tape& tape, const Graph& prev,
                        const DeltaMatrix& delta) const override;
  Graph sample_transition(const Graph& prev, Rng& rng) const override;

  // Lower-triangular 0/1 matrix of sampled |delta| (n x n).
  std::vector<uint8_t> sample_absdelta(const Graph& prev, Rng& rng) const;
  // n x n logits under teacher forcing with the given |delta| rows.
  ad::Var logits(ad::Tape& tape, const Graph& prev, const std::vector<uint8_t>& absdelta) const;

  int width() const { return width_; }
  // Output layer ids, e.g. for tests that pin all logits.
  const Linear& output_layer() const { return out_; }

 private:
  ad::Var memory(ad::Tape& tape, const Graph& prev) const;

  int width_;
  Linear enc_in_, dec_in_, out_;
  ad::ParamId start_ = -1;
  Transformer encoder_, decoder_;
};

}  // namespace damnets

#endif  // DAMNETS_AGE_MODEL_H_
