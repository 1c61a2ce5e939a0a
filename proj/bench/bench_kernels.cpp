/* Copyright 2026 The Assure Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference kernels against their OpenMP counterparts.

#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "assure/campaign.hpp"
#include "assure/kernels.hpp"
#include "assure/policy.hpp"

namespace {

using namespace assure;

EndorsementPolicy threshold_policy(int n) {
  std::vector<std::string> ids;
  for (int i = 1; i <= n; ++i) ids.push_back("E" + std::to_string(i));
  return out_of((n + 1) / 2, ids);
}

// Two organisations of n/2 endorsers each, a majority required in both.
EndorsementPolicy nested_policy(int n) {
  std::vector<std::string> a;
  std::vector<std::string> b;
  for (int i = 1; i <= n; ++i) (i <= n / 2 ? a : b).push_back("E" + std::to_string(i));
  return EndorsementPolicy::all({out_of(static_cast<int>(a.size()) / 2 + 1, a),
                                 out_of(static_cast<int>(b.size()) / 2 + 1, b)});
}

template <auto Kernel>
void run_kernel(benchmark::State& state, EndorsementPolicy (*make)(int)) {
  const CompiledPolicy policy(make(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(policy));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_MinimalSatisfying_Serial(benchmark::State& s) {
  run_kernel<kernels::serial::minimal_satisfying_masks>(s, threshold_policy);
}
void BM_MinimalSatisfying_Omp(benchmark::State& s) {
  run_kernel<kernels::omp::minimal_satisfying_masks>(s, threshold_policy);
}
void BM_MinimalBlocking_Serial(benchmark::State& s) {
  run_kernel<kernels::serial::minimal_blocking_masks>(s, nested_policy);
}
void BM_MinimalBlocking_Omp(benchmark::State& s) { run_kernel<kernels::omp::minimal_blocking_masks>(s, nested_policy); }
void BM_MinBlockingSize_Serial(benchmark::State& s) { run_kernel<kernels::serial::min_blocking_size>(s, nested_policy); }
void BM_MinBlockingSize_Omp(benchmark::State& s) { run_kernel<kernels::omp::min_blocking_size>(s, nested_policy); }

BENCHMARK(BM_MinimalSatisfying_Serial)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimalSatisfying_Omp)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimalBlocking_Serial)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinimalBlocking_Omp)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinBlockingSize_Serial)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinBlockingSize_Omp)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

void run_campaign(benchmark::State& state, bool parallel) {
  const auto base = default_campaign_scenario(threshold_policy(5));
  const FaultProbabilities probs{{Fault::Fraudulent, 0.2}, {Fault::Censoring, 0.1}, {Fault::Crashed, 0.1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? monte_carlo_campaign(base, probs, state.range(0), 1)
                                      : monte_carlo_campaign_serial(base, probs, state.range(0), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Campaign_Serial(benchmark::State& s) { run_campaign(s, false); }
void BM_Campaign_Omp(benchmark::State& s) { run_campaign(s, true); }

BENCHMARK(BM_Campaign_Serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Campaign_Omp)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
