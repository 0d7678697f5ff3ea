// Copyright 2026 The cohmap Authors
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


// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "cohmap/commx.h"
#include "cohmap/hidden_matching.h"
#include "cohmap/qds.h"

namespace {

using namespace cohmap;

hm::ExperimentConfig hm_config(std::int64_t trials) {
    hm::ExperimentConfig cfg;
    cfg.n = 64;
    cfg.alpha = std::sqrt(3.0);
    cfg.trials = static_cast<std::uint64_t>(trials);
    return cfg;
}

void BM_HiddenMatchingSerial(benchmark::State &state) {
    const auto cfg = hm_config(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hm::run_experiment_serial(cfg, Seed{1, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HiddenMatchingParallel(benchmark::State &state) {
    const auto cfg = hm_config(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hm::run_experiment(cfg, Seed{1, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct SuccessSetup {
    OutcomePartition partition = OutcomePartition::split_at(512, 1024);
    TrialGenerator generator;

    SuccessSetup() {
        std::vector<double> w(1024);
        for (std::size_t k = 0; k < w.size(); ++k) {
            w[k] = k < 512 ? 0.9 / 512 : 0.1 / 512;
        }
        generator = product_bernoulli_generator(coherent_click_probabilities(20.0, w));
    }
};

void BM_SuccessEstimateSerial(benchmark::State &state) {
    const SuccessSetup s;
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_success_probability_serial(
            s.generator, s.partition, static_cast<std::uint64_t>(state.range(0)), Seed{2, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SuccessEstimateParallel(benchmark::State &state) {
    const SuccessSetup s;
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_success_probability(s.generator, s.partition,
                                                              static_cast<std::uint64_t>(state.range(0)), Seed{2, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_QdsBatchSerial(benchmark::State &state) {
    const qds::QdsConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qds::run_qds_batch_serial(cfg, static_cast<std::uint64_t>(state.range(0)), Seed{3, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_QdsBatchParallel(benchmark::State &state) {
    const qds::QdsConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(qds::run_qds_batch(cfg, static_cast<std::uint64_t>(state.range(0)), Seed{3, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_HiddenMatchingSerial)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HiddenMatchingParallel)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuccessEstimateSerial)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuccessEstimateParallel)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QdsBatchSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QdsBatchParallel)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
