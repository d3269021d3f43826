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

#include "damnets/age_model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "damnets/error.h"

namespace damnets {

using ad::Shape;
using ad::Tape;
using ad::Var;

std::vector<uint8_t> symmetrize_lower(int n, const std::vector<uint8_t>& lower) {
  if (lower.size() != static_cast<std::size_t>(n) * n) {
    throw GraphError("symmetrize_lower: expected an n x n matrix");
  }
  std::vector<uint8_t> out(lower.size(), 0);
  for (int u = 1; u < n; ++u) {
    for (int v = 0; v < u; ++v) {
      const uint8_t x = lower[static_cast<std::size_t>(u) * n + v] ? 1 : 0;
      out[static_cast<std::size_t>(u) * n + v] = x;
      out[static_cast<std::size_t>(v) * n + u] = x;
    }
  }
  return out;
}

Graph mod2_apply(const Graph& prev, const std::vector<uint8_t>& absdelta) {
  const int n = prev.num_nodes();
  if (absdelta.size() != static_cast<std::size_t>(n) * n) {
    throw GraphError("mod2_apply: |delta| must be " + std::to_string(n) + " x " +
                     std::to_string(n));
  }
  const auto a = prev.adjacency();
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    if (absdelta[static_cast<std::size_t>(u) * n + u]) {
      throw GraphError("mod2_apply: nonzero diagonal at " + std::to_string(u));
    }
    for (int v = u + 1; v < n; ++v) {
      const std::size_t uv = static_cast<std::size_t>(u) * n + v;
      const std::size_t vu = static_cast<std::size_t>(v) * n + u;
      if ((absdelta[uv] != 0) != (absdelta[vu] != 0)) {
        throw GraphError("mod2_apply: |delta| is not symmetric at (" + std::to_string(u) +
                         "," + std::to_string(v) + ")");
      }
      if ((a[uv] != 0) != (absdelta[uv] != 0)) edges.push_back({u, v});
    }
  }
  return Graph(n, std::move(edges));
}

namespace {

int head_count(int width, int wanted) {
  for (int h = std::max(wanted, 1); h > 1; --h) {
    if (width % h == 0) return h;
  }
  return 1;
}

}  // namespace

AgeModel::AgeModel(int n, const ModelConfig& config) : TransitionModel(n, config) {
  config.validate();
  if (n < 1) throw std::invalid_argument("AgeModel: need at least one node");
  width_ = config.age_width > 0 ? config.age_width : std::min(n, 128);
  Rng init(derive_seed(config.seed, 0xa9e));
  RngUniform u(init);

  TransformerOptions options;
  options.dim = width_;
  options.layers = config.age_layers;
  options.heads = head_count(width_, config.age_heads);
  options.ff_width = 4 * width_;
  options.positional = false;

  enc_in_ = Linear::create(store_, "age.enc_in", n, width_, u);
  options.causal = false;
  options.cross = false;
  encoder_ = Transformer::create(store_, "age.encoder", options, u);

  start_ = store_.add_uniform("age.start", Shape{1, n}, 1, u);
  dec_in_ = Linear::create(store_, "age.dec_in", n, width_, u);
  options.causal = true;
  options.cross = true;
  decoder_ = Transformer::create(store_, "age.decoder", options, u);
  out_ = Linear::create(store_, "age.out", width_, n, u);
}

Var AgeModel::memory(Tape& tape, const Graph& prev) const {
  const auto a = prev.adjacency();
  std::vector<double> rows(a.begin(), a.end());
  return encoder_(tape, enc_in_(tape, tape.constant(Shape{n_, n_}, rows)));
}

Var AgeModel::logits(Tape& tape, const Graph& prev, const std::vector<uint8_t>& absdelta) const {
  check_graph(prev);
  const int n = n_;
  if (absdelta.size() != static_cast<std::size_t>(n) * n) {
    throw GraphError("AgeModel: |delta| must be n x n");
  }
  Var mem = memory(tape, prev);
  // Shifted targets: position u sees rows 0 .. u-1.
  std::vector<Var> inputs{tape.param(start_)};
  if (n > 1) {
    std::vector<double> shifted(static_cast<std::size_t>(n - 1) * n, 0.0);
    for (int u = 0; u + 1 < n; ++u) {
      for (int v = 0; v < u; ++v) {
        shifted[static_cast<std::size_t>(u) * n + v] = absdelta[static_cast<std::size_t>(u) * n + v];
      }
    }
    inputs.push_back(tape.constant(Shape{n - 1, n}, shifted));
  }
  Var x = dec_in_(tape, ad::concat_rows(inputs));
  return out_(tape, decoder_(tape, x, mem));
}

TransitionScore AgeModel::score(Tape& tape, const Graph& prev, const DeltaMatrix& delta) const {
  check_graph(prev);
  if (delta.num_nodes() != n_) throw GraphError("delta node count does not match the model");
  const int n = n_;
  std::vector<uint8_t> lower(static_cast<std::size_t>(n) * n, 0);
  for (const auto& [key, sign] : delta.entries()) {
    const bool has_edge = prev.has_edge(key.first, key.second);
    if ((sign > 0) == has_edge) {
      throw GraphError("delta entry (" + std::to_string(key.first) + "," +
                       std::to_string(key.second) + ") is inconsistent with the previous graph");
    }
    lower[static_cast<std::size_t>(key.first) * n + key.second] = 1;
  }
  TransitionScore out;
  if (n < 2) {
    out.log_prob = tape.zeros(Shape{1, 1});
    return out;
  }
  Var l = logits(tape, prev, lower);
  // log p = sum over v < u of log sig(+-l); sign +1 for present entries.
  std::vector<double> signs(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<double> keep(static_cast<std::size_t>(n) * n, 0.0);
  for (int u = 1; u < n; ++u) {
    for (int v = 0; v < u; ++v) {
      const std::size_t k = static_cast<std::size_t>(u) * n + v;
      signs[k] = lower[k] ? 1.0 : -1.0;
      keep[k] = 1.0;
    }
  }
  Var signed_logits = ad::mul(l, tape.constant(Shape{n, n}, signs));
  Var terms = ad::mul(ad::log_sigmoid(signed_logits), tape.constant(Shape{n, n}, keep));
  out.log_prob = ad::sum(terms);
  out.decisions = n * (n - 1) / 2;
  return out;
}

std::vector<uint8_t> AgeModel::sample_absdelta(const Graph& prev, Rng& rng) const {
  check_graph(prev);
  const int n = n_;
  Tape tape(&store_);
  Var mem = memory(tape, prev);
  TransformerStepper stepper(decoder_, tape, mem);
  std::vector<uint8_t> lower(static_cast<std::size_t>(n) * n, 0);
  Var input = tape.param(start_);
  for (int u = 0; u < n; ++u) {
    Var row_logits = out_(tape, stepper.push(dec_in_(tape, input)));
    std::vector<double> next(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < u; ++v) {
      const double l = row_logits.at(0, v);
      const double p = l >= 0.0 ? 1.0 / (1.0 + std::exp(-l)) : std::exp(l) / (1.0 + std::exp(l));
      if (rng.uniform() < p) {
        lower[static_cast<std::size_t>(u) * n + v] = 1;
        next[static_cast<std::size_t>(v)] = 1.0;
      }
    }
    if (u + 1 < n) input = tape.constant(Shape{1, n}, next);
  }
  return lower;
}

Graph AgeModel::sample_transition(const Graph& prev, Rng& rng) const {
  return mod2_apply(prev, symmetrize_lower(n_, sample_absdelta(prev, rng)));
}

}  // namespace damnets
