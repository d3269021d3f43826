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

#ifndef DAMNETS_TREE_DECODER_H_
#define DAMNETS_TREE_DECODER_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "damnets/autodiff.h"
#include "damnets/graph.h"
#include "damnets/layers.h"
#include "damnets/rng.h"

namespace damnets {

// Inclusive column range of a row tree node. Columns are 0-based, so the
// root of a row of width w is [0, w - 1].
struct Interval {
  int lo = 0;
  int hi = 0;
  bool is_leaf() const { return lo == hi; }
  int mid() const { return lo + (hi - lo) / 2; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Binary interval tree of one delta row. Node 0 is the root; children follow
// their parent (pre-order), so reverse index order is a valid bottom-up
// order. A child exists iff the support intersects its interval.
struct RowTree {
  struct Node {
    Interval interval;
    int left = -1;
    int right = -1;
  };

  int width = 0;
  std::vector<Node> nodes;  // empty iff width == 0
  // False only for a root whose interval holds no support column.
  bool root_present = false;

  std::size_t size() const { return nodes.size(); }
};

// support: strictly increasing columns in [0, width). Throws
// std::invalid_argument otherwise.
RowTree build_training_tree(std::span<const int> support, int width);

// Columns of the present leaves, increasing.
std::vector<int> tree_leaves(const RowTree& tree);

// Log-likelihood of one row together with its embedding g = h_bot(root).
struct RowScore {
  ad::Var log_prob;  // 1 x 1
  LstmState g;
  int decisions = 0;
};

struct RowSample {
  std::vector<std::pair<NodeId, int8_t>> entries;  // column, sign
  LstmState g;
  double log_prob = 0.0;
  int decisions = 0;
};

// Parameters and recursions of the row tree model.
//
// Decisions at node k with top state s:
//   left:  p = sig(MLP_L(s.h)), or sig(MLP_+/-(s.h)) when lch is a leaf;
//   h_top(lch) = LSTM(embed_left, s);
//   h^(rch)   = TreeCell_top(h_bot(lch), h_top(lch));
//   right: p = sig(MLP_R(h^.h)), or sig(MLP_+/-(h^.h)) when rch is a leaf;
//   h_top(rch) = LSTM(embed_right, h^).
// Below the root a node exists only because its interval holds a support
// column, so when the left child is absent the right one is present with
// probability 1 and no right decision is made. Leaves use MLP_+ when the
// previous graph lacks the edge and MLP_- when it has it.
// Bottom states: absent child 0, present leaf 1 (both h and c),
// internal h_bot(k) = TreeCell_bot(h_bot(lch), h_bot(rch)).
class TreeDecoder {
 public:
  TreeDecoder() = default;
  static TreeDecoder create(ad::ParameterStore& store, const std::string& name, int hidden,
                            ad::Uniform01& rng);

  int hidden() const { return hidden_; }

  // Bottom-up states, aligned with tree.nodes. Depends only on topology.
  std::vector<LstmState> bottom_up(ad::Tape& tape, const RowTree& tree) const;
  // Embedding of a row: h_bot(root), or the zero state when width == 0.
  LstmState row_embedding(ad::Tape& tape, const RowTree& tree,
                          const std::vector<LstmState>& bottom) const;

  // Sum of log Bernoulli terms of the tree's decisions, given its bottom-up
  // states and the root top state. prev_row[v] is A(t-1)[u][v].
  ad::Var top_down_log_prob(ad::Tape& tape, const RowTree& tree,
                            const std::vector<LstmState>& bottom, const LstmState& root,
                            std::span<const uint8_t> prev_row, int* decisions = nullptr) const;

  // Scores a signed row. Throws GraphError if a sign disagrees with
  // prev_row (+1 on an existing edge, -1 on a missing one).
  RowScore row_log_likelihood(ad::Tape& tape, const LstmState& root, int width,
                              std::span<const std::pair<NodeId, int8_t>> entries,
                              std::span<const uint8_t> prev_row) const;

  // Ancestral sample of the same process.
  RowSample sample_row(ad::Tape& tape, const LstmState& root, int width,
                       std::span<const uint8_t> prev_row, Rng& rng) const;

  LstmState zero_state(ad::Tape& tape) const;
  LstmState ones_state(ad::Tape& tape) const;

 private:
  struct Context;
  ad::Var leaf_logit(ad::Tape& tape, ad::Var h, int column,
                     std::span<const uint8_t> prev_row) const;

  Mlp mlp_left_, mlp_right_, mlp_plus_, mlp_minus_;
  TreeCell cell_top_, cell_bot_;
  LstmCell lstm_;
  ad::ParamId embed_left_ = -1;
  ad::ParamId embed_right_ = -1;
  int hidden_ = 0;
};

}  // namespace damnets

#endif  // DAMNETS_TREE_DECODER_H_
