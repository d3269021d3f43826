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

#include <benchmark/benchmark.h>

#include <vector>

#include "damnets/autodiff.h"
#include "damnets/damnets_model.h"
#include "damnets/evaluation.h"
#include "damnets/generators.h"
#include "damnets/rng.h"

namespace damnets {
namespace {

void BM_MatmulBackward(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  std::vector<double> a(static_cast<std::size_t>(n) * n), b(a.size());
  for (auto& x : a) x = rng.uniform();
  for (auto& x : b) x = rng.uniform();
  for (auto _ : state) {
    ad::Tape tape;
    ad::Var va = tape.input({n, n}, a);
    ad::Var vb = tape.input({n, n}, b);
    tape.backward(ad::sum(ad::matmul(va, vb)));
    benchmark::DoNotOptimize(tape.grad(va).data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_MatmulBackward)->RangeMultiplier(2)->Range(16, 128);

ModelConfig bench_config() {
  ModelConfig c;
  c.hidden = 32;
  c.seed = 2;
  return c;
}

void BM_TransitionNll(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DamnetsModel model(n, bench_config());
  const auto s = gen_ba({n, 2, 3});
  const Graph& prev = s.graphs[s.graphs.size() / 2];
  const DeltaMatrix delta = compute_delta(prev, s.graphs[s.graphs.size() / 2 + 1]);
  for (auto _ : state) benchmark::DoNotOptimize(model.transition_nll(prev, delta));
}
BENCHMARK(BM_TransitionNll)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_SampleTransition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DamnetsModel model(n, bench_config());
  const auto s = gen_ba({n, 2, 4});
  Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.sample_transition(s.graphs.back(), rng).num_edges());
  }
}
BENCHMARK(BM_SampleTransition)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_MmdBarDegree(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const auto x = gen_ba_set({30, 2, 6}, count);
  const auto y = gen_ba_set({30, 2, 7}, count);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mmd_bar(x, y, StatisticId::kDegree).total);
  }
}
BENCHMARK(BM_MmdBarDegree)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace damnets

BENCHMARK_MAIN();
