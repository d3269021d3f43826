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

#include "damnets/damnets_model.h"

#include <stdexcept>

#include "damnets/age_model.h"
#include "damnets/error.h"

namespace damnets {

using ad::Shape;
using ad::Tape;
using ad::Var;

void TransitionModel::check_graph(const Graph& g) const {
  if (g.num_nodes() != n_) {
    throw GraphError("graph has " + std::to_string(g.num_nodes()) + " nodes but the model has " +
                     std::to_string(n_));
  }
}

double TransitionModel::transition_nll(const Graph& prev, const DeltaMatrix& delta) const {
  Tape tape(&store_);
  return -score(tape, prev, delta).log_prob.item();
}

NetworkTimeSeries TransitionModel::sample_series(const Graph& g0, int steps, Rng& rng) const {
  check_graph(g0);
  if (steps < 0) throw std::invalid_argument("sample_series: negative step count");
  NetworkTimeSeries series;
  series.n = n_;
  series.graphs.reserve(static_cast<std::size_t>(steps) + 1);
  series.graphs.push_back(g0);
  for (int t = 0; t < steps; ++t) {
    series.graphs.push_back(sample_transition(series.graphs.back(), rng));
  }
  return series;
}

std::unique_ptr<TransitionModel> make_model(const std::string& kind, int n,
                                            const ModelConfig& config) {
  if (kind == "damnets") return std::make_unique<DamnetsModel>(n, config);
  if (kind == "age-d") return std::make_unique<AgeModel>(n, config);
  throw std::invalid_argument("unknown model kind '" + kind + "' (expected damnets|age-d)");
}

DamnetsModel::DamnetsModel(int n, const ModelConfig& config) : TransitionModel(n, config) {
  config.validate();
  if (n < 1) throw std::invalid_argument("DamnetsModel: need at least one node");
  Rng init(derive_seed(config.seed, 0x1417));
  RngUniform u(init);
  const int F = config.hidden;
  for (int l = 0; l < config.gat_layers; ++l) {
    gat_.push_back(GatLayer::create(store_, "gat" + std::to_string(l), l == 0 ? n : F, F,
                                    config.gat_heads, u, config.gat_activation, l == 0));
  }
  mlp_cat_ = Mlp::create(store_, "mlp_cat", 2 * F, F, F, u);
  row_model_ = make_row_model(config.row_model, store_, "row", F, config.row_layers, u);
  decoder_ = TreeDecoder::create(store_, "tree", F, u);
}

Var DamnetsModel::encode(Tape& tape, const Graph& prev) const {
  check_graph(prev);
  Var mask = tape.constant(Shape{n_, n_}, neighbourhood_mask(n_, prev.adjacency()));
  Var h = gat_[0].forward_identity(tape, mask);
  for (std::size_t l = 1; l < gat_.size(); ++l) h = gat_[l](tape, h, mask);
  return h;
}

LstmState DamnetsModel::row_context(Tape& tape, Var h_row_prev, Var node_embedding) const {
  Var h = mlp_cat_(tape, ad::concat_cols({h_row_prev, node_embedding}));
  return {h, tape.zeros(Shape{1, config_.hidden})};
}

TransitionScore DamnetsModel::score(Tape& tape, const Graph& prev,
                                    const DeltaMatrix& delta) const {
  check_graph(prev);
  if (delta.num_nodes() != n_) throw GraphError("delta node count does not match the model");
  const int n = n_;
  const auto adjacency = prev.adjacency();
  auto prev_row = [&](int u) {
    return std::span<const uint8_t>(adjacency.data() + static_cast<std::size_t>(u) * n,
                                    static_cast<std::size_t>(n));
  };

  // Bottom-up passes depend only on each row's support.
  std::vector<RowTree> trees;
  std::vector<std::vector<LstmState>> bottoms;
  std::vector<Var> g_rows;
  trees.reserve(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    std::vector<int> support;
    for (const auto& [column, sign] : delta.row(u)) {
      const bool has_edge = prev_row(u)[static_cast<std::size_t>(column)] != 0;
      if ((sign > 0) == has_edge) {
        throw GraphError("delta entry (" + std::to_string(u) + "," + std::to_string(column) +
                         ") is inconsistent with the previous graph");
      }
      support.push_back(column);
    }
    trees.push_back(build_training_tree(support, u));
    bottoms.push_back(decoder_.bottom_up(tape, trees.back()));
    if (u + 1 < n) g_rows.push_back(decoder_.row_embedding(tape, trees.back(), bottoms.back()).h);
  }

  Var H = encode(tape, prev);
  Var h_rows;
  if (!g_rows.empty()) h_rows = row_model_->forward(tape, ad::concat_rows(g_rows));
  TransitionScore out;
  std::vector<Var> terms;
  for (int u = 1; u < n; ++u) {  // row 0 is empty and contributes 0
    Var h_prev = ad::row(h_rows, u - 1);
    const LstmState root = row_context(tape, h_prev, ad::row(H, u));
    int decisions = 0;
    terms.push_back(
        decoder_.top_down_log_prob(tape, trees[static_cast<std::size_t>(u)],
                                   bottoms[static_cast<std::size_t>(u)], root, prev_row(u),
                                   &decisions));
    out.decisions += decisions;
  }
  out.log_prob = terms.empty() ? tape.zeros(Shape{1, 1}) : ad::sum(ad::concat_cols(terms));
  return out;
}

DeltaMatrix DamnetsModel::sample_delta(const Graph& prev, Rng& rng, double* log_prob) const {
  check_graph(prev);
  const int n = n_;
  const auto adjacency = prev.adjacency();
  Tape tape(&store_);
  Var H = encode(tape, prev);
  auto stepper = row_model_->stepper(tape);
  Var h_prev = tape.zeros(Shape{1, config_.hidden});
  DeltaMatrix delta(n);
  double total = 0.0;
  for (int u = 0; u < n; ++u) {
    std::span<const uint8_t> prev_row(adjacency.data() + static_cast<std::size_t>(u) * n,
                                      static_cast<std::size_t>(n));
    const LstmState root = row_context(tape, h_prev, ad::row(H, u));
    RowSample row = decoder_.sample_row(tape, root, u, prev_row, rng);
    total += row.log_prob;
    for (const auto& [column, sign] : row.entries) delta.set(u, column, sign);
    if (u + 1 < n) h_prev = stepper->push(row.g.h);
  }
  if (log_prob) *log_prob = total;
  return delta;
}

Graph DamnetsModel::sample_transition(const Graph& prev, Rng& rng) const {
  return apply_delta(prev, sample_delta(prev, rng));
}

}  // namespace damnets
