// Copyright 2026 The wmtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "wmtomo/dasarvind.h"
#include "wmtomo/dst.h"
#include "wmtomo/estimate.h"
#include "wmtomo/fisher.h"

namespace {

using namespace wmtomo;

void BM_CrbMub(benchmark::State &state) {
    DiscretePovm p = mub_povm();
    for (auto _ : state) benchmark::DoNotOptimize(crb(p).c_value);
}
BENCHMARK(BM_CrbMub)->Unit(benchmark::kMillisecond);

void BM_CrbDstOriginal(benchmark::State &state) {
    DiscretePovm p = dst_povm(DstConfig{2, 0.89});
    for (auto _ : state) benchmark::DoNotOptimize(crb(p).c_value);
}
BENCHMARK(BM_CrbDstOriginal)->Unit(benchmark::kMillisecond);

void BM_DiscretizeDasArvind(benchmark::State &state) {
    DaConfig c{0.575, static_cast<size_t>(state.range(0)), 8.0};
    for (auto _ : state) benchmark::DoNotOptimize(discretize(c).size());
}
BENCHMARK(BM_DiscretizeDasArvind)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_SmcUpdate(benchmark::State &state) {
    Rng rng(1);
    ParticleEnsemble e = init_prior(static_cast<size_t>(state.range(0)), rng);
    QubitEffect effect{1.0 / 6.0, Vec3(0, 0, 1.0 / 6.0)};
    SmcSettings no_resample{0.98, 0.0};
    for (auto _ : state) benchmark::DoNotOptimize(bayes_update(e, effect, rng, no_resample).size());
}
BENCHMARK(BM_SmcUpdate)->Arg(1000)->Arg(4000);

void BM_Resample(benchmark::State &state) {
    Rng rng(2);
    ParticleEnsemble e = init_prior(4000, rng);
    for (auto _ : state) benchmark::DoNotOptimize(resample(e, rng).size());
}
BENCHMARK(BM_Resample);

void BM_DaSample(benchmark::State &state) {
    Rng rng(3);
    Vec3 r(0.3, 0.4, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(sample_measurement(r, 0.575, rng).q1);
}
BENCHMARK(BM_DaSample);

}  // namespace

BENCHMARK_MAIN();
