// Copyright 2026 The finmono Authors
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

#include "finmono/characters.hpp"
#include "finmono/criteria.hpp"
#include "finmono/digits.hpp"
#include "finmono/proofcheck.hpp"
#include "finmono/traces.hpp"

using namespace finmono;

namespace {

void BM_DigitSumUpper(benchmark::State& state) {
  long long y = 123456789;
  for (auto _ : state) {
    benchmark::DoNotOptimize(digit_sum_upper(y, 3, 8));
    ++y;
  }
}
BENCHMARK(BM_DigitSumUpper);

void BM_KubertV(benchmark::State& state) {
  const long long den = state.range(0);
  for (auto _ : state) {
    for (long long num = 1; num < den; ++num)
      benchmark::DoNotOptimize(kubert_V(FractionModZ(num, den), 3));
  }
  state.SetItemsProcessed(state.iterations() * (den - 1));
}
BENCHMARK(BM_KubertV)->Arg(22)->Arg(199);

void BM_DigitCriterionSweep(benchmark::State& state) {
  const int f = static_cast<int>(state.range(0));
  const SystemSpec spec = SystemSpec::make(3, 23, {1, 5}, Twist::Quadratic);
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_digit_criterion(spec, f, {.witness_cap = 0}).pass);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(criterion_iteration_count(spec, f)));
}
BENCHMARK(BM_DigitCriterionSweep)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SearchRange(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(search(3, 2, 200, Twist::Quadratic, 5).size());
  }
}
BENCHMARK(BM_SearchRange)->Unit(benchmark::kMillisecond);

void BM_FieldBuild(benchmark::State& state) {
  const int f = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(FieldTable::build(3, f).q());
  }
}
BENCHMARK(BM_FieldBuild)->Arg(4)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_GaussSumAllCharacters(benchmark::State& state) {
  const FieldTable K = FieldTable::build(3, 4);
  for (auto _ : state) {
    for (long long j = 0; j < K.q() - 1; ++j)
      benchmark::DoNotOptimize(gauss_sum(K, char_from_index(K, j)).order());
  }
  state.SetItemsProcessed(state.iterations() * (K.q() - 1));
}
BENCHMARK(BM_GaussSumAllCharacters)->Unit(benchmark::kMillisecond);

void BM_TraceTableF243(benchmark::State& state) {
  const SystemSpec spec = SystemSpec::make(3, 23, {1}, Twist::Quadratic);
  const FieldTable K = FieldTable::build(3, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(trace_table(spec, K).rows.size());
  }
  state.SetItemsProcessed(state.iterations() * K.q());
}
BENCHMARK(BM_TraceTableF243)->Unit(benchmark::kMillisecond);

void BM_InductionReplay(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_induction_assembly(5).pass);
  }
}
BENCHMARK(BM_InductionReplay)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
