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

#ifndef DAMNETS_GENERATORS_H_
#define DAMNETS_GENERATORS_H_

#include <cstdint>
#include <vector>

#include "damnets/graph.h"

namespace damnets {

// Barabasi-Albert growth. G_0 holds all n labels, none connected; the
// arrival of node m + t - 1 produces G_t, so the series has n - m + 1 graphs.
struct BAParams {
  int n = 100;
  int m = 4;
  uint64_t seed = 0;
};

// Hub concentration on a bipartite graph. Left nodes are [0, per_side),
// right nodes [per_side, 2 * per_side).
struct BipartiteParams {
  int per_side = 30;
  double p = 0.5;
  double p_con = 0.1;
  int T = 10;
  uint64_t seed = 0;
};

// Stochastic block model whose community `decay` has a fixed fraction of its
// internal edges rewired to the other communities at every step. Communities
// are contiguous label blocks in the order of community_sizes.
struct CommunityDecayParams {
  std::vector<int> community_sizes{20, 20, 20};
  double p_int = 0.9;
  double p_ext = 0.01;
  int decay = 2;
  double f_dec = 0.2;
  int T = 20;
  uint64_t seed = 0;
};

NetworkTimeSeries gen_ba(const BAParams& params);
NetworkTimeSeries gen_bipartite(const BipartiteParams& params);
NetworkTimeSeries gen_community_decay(const CommunityDecayParams& params);

// `count` series; series k uses derive_seed(params.seed, k).
std::vector<NetworkTimeSeries> gen_ba_set(BAParams params, int count);
std::vector<NetworkTimeSeries> gen_bipartite_set(BipartiteParams params, int count);
std::vector<NetworkTimeSeries> gen_community_decay_set(CommunityDecayParams params,
                                                       int count);

// Community label of every node for the contiguous block layout above.
std::vector<int> community_labels(const std::vector<int>& community_sizes);

}  // namespace damnets

#endif  // DAMNETS_GENERATORS_H_
