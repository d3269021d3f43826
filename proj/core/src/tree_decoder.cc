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

#include "damnets/tree_decoder.h"

#include <cmath>
#include <stdexcept>

#include "damnets/error.h"

namespace damnets {

using ad::Shape;
using ad::Tape;
using ad::Var;

namespace {

int build(RowTree& tree, std::span<const int> support, Interval iv) {
  const int index = static_cast<int>(tree.nodes.size());
  tree.nodes.push_back({iv, -1, -1});
  if (iv.is_leaf()) return index;
  const int mid = iv.mid();
  // support is sorted: split it at the first column > mid.
  std::size_t cut = 0;
  while (cut < support.size() && support[cut] <= mid) ++cut;
  if (cut > 0) {
    const int child = build(tree, support.first(cut), {iv.lo, mid});
    tree.nodes[static_cast<std::size_t>(index)].left = child;
  }
  if (cut < support.size()) {
    const int child = build(tree, support.subspan(cut), {mid + 1, iv.hi});
    tree.nodes[static_cast<std::size_t>(index)].right = child;
  }
  return index;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

}  // namespace

RowTree build_training_tree(std::span<const int> support, int width) {
  if (width < 0) throw std::invalid_argument("build_training_tree: negative width");
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0 || support[i] >= width) {
      throw std::invalid_argument("build_training_tree: column " + std::to_string(support[i]) +
                                  " outside row of width " + std::to_string(width));
    }
    if (i > 0 && support[i] <= support[i - 1]) {
      throw std::invalid_argument("build_training_tree: support must be strictly increasing");
    }
  }
  RowTree tree;
  tree.width = width;
  if (width == 0) return tree;
  tree.root_present = !support.empty();
  build(tree, support, {0, width - 1});
  return tree;
}

std::vector<int> tree_leaves(const RowTree& tree) {
  std::vector<int> out;
  if (tree.nodes.empty() || !tree.root_present) return out;
  // Pre-order with left before right visits leaves in column order.
  for (const auto& node : tree.nodes) {
    if (node.interval.is_leaf()) out.push_back(node.interval.lo);
  }
  return out;
}

TreeDecoder TreeDecoder::create(ad::ParameterStore& store, const std::string& name,
                                int hidden, ad::Uniform01& rng) {
  TreeDecoder d;
  d.hidden_ = hidden;
  d.mlp_left_ = Mlp::create(store, name + ".mlp_left", hidden, hidden, 1, rng);
  d.mlp_right_ = Mlp::create(store, name + ".mlp_right", hidden, hidden, 1, rng);
  d.mlp_plus_ = Mlp::create(store, name + ".mlp_plus", hidden, hidden, 1, rng);
  d.mlp_minus_ = Mlp::create(store, name + ".mlp_minus", hidden, hidden, 1, rng);
  d.cell_top_ = TreeCell::create(store, name + ".cell_top", hidden, rng);
  d.cell_bot_ = TreeCell::create(store, name + ".cell_bot", hidden, rng);
  d.lstm_ = LstmCell::create(store, name + ".lstm", hidden, hidden, rng);
  d.embed_left_ = store.add_uniform(name + ".embed_left", Shape{1, hidden}, 1, rng);
  d.embed_right_ = store.add_uniform(name + ".embed_right", Shape{1, hidden}, 1, rng);
  return d;
}

LstmState TreeDecoder::zero_state(Tape& tape) const {
  Var z = tape.zeros(Shape{1, hidden_});
  return {z, z};
}

LstmState TreeDecoder::ones_state(Tape& tape) const {
  Var one = tape.constant(Shape{1, hidden_}, 1.0);
  return {one, one};
}

Var TreeDecoder::leaf_logit(Tape& tape, Var h, int column,
                            std::span<const uint8_t> prev_row) const {
  const bool has_edge = prev_row[static_cast<std::size_t>(column)] != 0;
  return has_edge ? mlp_minus_(tape, h) : mlp_plus_(tape, h);
}

// Per-row working set shared by the scoring and sampling recursions.
struct TreeDecoder::Context {
  Tape& tape;
  std::span<const uint8_t> prev_row;
  Var left_input;   // embed_left projected through the LSTM input map
  Var right_input;
  LstmState zero;
  LstmState ones;
  std::vector<Var> signed_logits;  // +logit for "present", -logit for "absent"
  int decisions = 0;
  // Sampling only.
  Rng* rng = nullptr;
  double log_prob = 0.0;
  std::vector<std::pair<NodeId, int8_t>> entries;

  void record(Var logit, bool present) {
    signed_logits.push_back(present ? logit : ad::scale(logit, -1.0));
    ++decisions;
  }

  bool draw(Var logit) {
    const double l = logit.item();
    const bool present = rng->uniform() < sigmoid(l);
    log_prob += log_sigmoid(present ? l : -l);
    ++decisions;
    return present;
  }

  void emit(int column) {
    const bool has_edge = prev_row[static_cast<std::size_t>(column)] != 0;
    entries.emplace_back(column, static_cast<int8_t>(has_edge ? -1 : 1));
  }
};

std::vector<LstmState> TreeDecoder::bottom_up(Tape& tape, const RowTree& tree) const {
  std::vector<LstmState> bottom(tree.nodes.size());
  if (tree.nodes.empty()) return bottom;
  const LstmState zero = zero_state(tape);
  const LstmState ones = ones_state(tape);
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    const auto& node = tree.nodes[i];
    if (node.interval.is_leaf()) {
      bottom[i] = (i == 0 && !tree.root_present) ? zero : ones;
      continue;
    }
    const LstmState& l = node.left >= 0 ? bottom[static_cast<std::size_t>(node.left)] : zero;
    const LstmState& r = node.right >= 0 ? bottom[static_cast<std::size_t>(node.right)] : zero;
    bottom[i] = cell_bot_(tape, l, r);
  }
  return bottom;
}

LstmState TreeDecoder::row_embedding(Tape& tape, const RowTree& tree,
                                     const std::vector<LstmState>& bottom) const {
  if (tree.nodes.empty()) return zero_state(tape);
  return bottom[0];
}

Var TreeDecoder::top_down_log_prob(Tape& tape, const RowTree& tree,
                                   const std::vector<LstmState>& bottom,
                                   const LstmState& root, std::span<const uint8_t> prev_row,
                                   int* decisions) const {
  if (tree.nodes.empty()) {
    if (decisions) *decisions = 0;
    return tape.zeros(Shape{1, 1});
  }
  if (prev_row.size() < static_cast<std::size_t>(tree.width)) {
    throw std::invalid_argument("top_down_log_prob: sign context shorter than the row");
  }
  Context ctx{tape, prev_row, lstm_.project_input(tape, tape.param(embed_left_)),
              lstm_.project_input(tape, tape.param(embed_right_)), zero_state(tape),
              ones_state(tape), {}, 0, nullptr, 0.0, {}};

  const auto& root_node = tree.nodes[0];
  if (root_node.interval.is_leaf()) {
    ctx.record(leaf_logit(tape, root.h, root_node.interval.lo, prev_row), tree.root_present);
  } else {
    auto visit = [&](auto&& self, int index, const LstmState& top) -> void {
      const auto& node = tree.nodes[static_cast<std::size_t>(index)];
      const Interval iv = node.interval;
      const int mid = iv.mid();
      const bool left_leaf = iv.lo == mid;
      const bool right_leaf = mid + 1 == iv.hi;
      const bool has_left = node.left >= 0;
      const bool has_right = node.right >= 0;

      Var left_logit = left_leaf ? leaf_logit(tape, top.h, iv.lo, prev_row)
                                 : mlp_left_(tape, top.h);
      ctx.record(left_logit, has_left);
      const LstmState top_left = lstm_.step_projected(tape, ctx.left_input, top);
      if (has_left && !left_leaf) self(self, node.left, top_left);
      const LstmState& bot_left =
          has_left ? bottom[static_cast<std::size_t>(node.left)] : ctx.zero;
      const LstmState hat = cell_top_(tape, bot_left, top_left);
      if (index == 0 || has_left) {
        Var right_logit = right_leaf ? leaf_logit(tape, hat.h, mid + 1, prev_row)
                                     : mlp_right_(tape, hat.h);
        ctx.record(right_logit, has_right);
      } else if (!has_right) {
        throw std::logic_error("row tree has an empty non-root node");
      }
      if (has_right && !right_leaf) {
        self(self, node.right, lstm_.step_projected(tape, ctx.right_input, hat));
      }
    };
    visit(visit, 0, root);
  }
  if (decisions) *decisions = ctx.decisions;
  Var logits =
      ctx.signed_logits.size() == 1 ? ctx.signed_logits[0] : ad::concat_cols(ctx.signed_logits);
  return ad::sum(ad::log_sigmoid(logits));
}

RowScore TreeDecoder::row_log_likelihood(Tape& tape, const LstmState& root, int width,
                                         std::span<const std::pair<NodeId, int8_t>> entries,
                                         std::span<const uint8_t> prev_row) const {
  if (prev_row.size() < static_cast<std::size_t>(width)) {
    throw std::invalid_argument("row_log_likelihood: sign context shorter than the row");
  }
  std::vector<int> support;
  support.reserve(entries.size());
  for (const auto& [column, sign] : entries) {
    if (column < 0 || column >= width) {
      throw std::invalid_argument("row_log_likelihood: column outside the row");
    }
    const bool has_edge = prev_row[static_cast<std::size_t>(column)] != 0;
    if ((sign == 1 && has_edge) || (sign == -1 && !has_edge) || (sign != 1 && sign != -1)) {
      throw GraphError("row entry at column " + std::to_string(column) + " has sign " +
                       std::to_string(sign) + " but the previous graph " +
                       (has_edge ? "has" : "lacks") + " that edge");
    }
    support.push_back(column);
  }
  const RowTree tree = build_training_tree(support, width);
  const auto bottom = bottom_up(tape, tree);
  RowScore score;
  score.log_prob = top_down_log_prob(tape, tree, bottom, root, prev_row, &score.decisions);
  score.g = row_embedding(tape, tree, bottom);
  return score;
}

RowSample TreeDecoder::sample_row(Tape& tape, const LstmState& root, int width,
                                  std::span<const uint8_t> prev_row, Rng& rng) const {
  if (prev_row.size() < static_cast<std::size_t>(width)) {
    throw std::invalid_argument("sample_row: sign context shorter than the row");
  }
  RowSample out;
  if (width == 0) {
    out.g = zero_state(tape);
    return out;
  }
  Context ctx{tape, prev_row, lstm_.project_input(tape, tape.param(embed_left_)),
              lstm_.project_input(tape, tape.param(embed_right_)), zero_state(tape),
              ones_state(tape), {}, 0, &rng, 0.0, {}};

  if (width == 1) {
    const bool present = ctx.draw(leaf_logit(tape, root.h, 0, prev_row));
    if (present) ctx.emit(0);
    out.g = present ? ctx.ones : ctx.zero;
  } else {
    // Returns h_bot of the subtree rooted at iv.
    auto expand = [&](auto&& self, Interval iv, const LstmState& top,
                      bool is_root) -> LstmState {
      const int mid = iv.mid();
      const bool left_leaf = iv.lo == mid;
      const bool right_leaf = mid + 1 == iv.hi;

      const bool has_left = ctx.draw(left_leaf ? leaf_logit(tape, top.h, iv.lo, prev_row)
                                               : mlp_left_(tape, top.h));
      const LstmState top_left = lstm_.step_projected(tape, ctx.left_input, top);
      LstmState bot_left = ctx.zero;
      if (has_left) {
        if (left_leaf) {
          ctx.emit(iv.lo);
          bot_left = ctx.ones;
        } else {
          bot_left = self(self, Interval{iv.lo, mid}, top_left, false);
        }
      }
      const LstmState hat = cell_top_(tape, bot_left, top_left);
      bool has_right = true;
      if (is_root || has_left) {
        has_right = ctx.draw(right_leaf ? leaf_logit(tape, hat.h, mid + 1, prev_row)
                                        : mlp_right_(tape, hat.h));
      }
      LstmState bot_right = ctx.zero;
      if (has_right) {
        if (right_leaf) {
          ctx.emit(mid + 1);
          bot_right = ctx.ones;
        } else {
          bot_right = self(self, Interval{mid + 1, iv.hi},
                           lstm_.step_projected(tape, ctx.right_input, hat), false);
        }
      }
      return cell_bot_(tape, bot_left, bot_right);
    };
    out.g = expand(expand, Interval{0, width - 1}, root, true);
  }
  out.entries = std::move(ctx.entries);
  out.log_prob = ctx.log_prob;
  out.decisions = ctx.decisions;
  return out;
}

}  // namespace damnets
