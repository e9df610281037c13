// Copyright 2026 The dsplit Authors.
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

// Serial against OpenMP class loop and basis enumeration.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "dsplit/documents.hpp"
#include "dsplit/split.hpp"

namespace {

dsplit::VectorConfig builtin(const char* name) {
  return dsplit::to_config(*dsplit::builtin_config(name));
}

void run_split(benchmark::State& state, const char* name, bool parallel) {
  const dsplit::VectorConfig config = builtin(name);
  dsplit::SplitOptions opts;
  opts.parallel = parallel;
  const std::int64_t q = state.range(0);
  for (auto _ : state) {
    dsplit::Verdict v = dsplit::is_split_at(config, q, opts);
    benchmark::DoNotOptimize(v.split);
  }
  state.counters["threads"] = parallel ? omp_get_max_threads() : 1;
}

void BM_SplitSerial_Birkhoff(benchmark::State& s) { run_split(s, "birkhoff-3", false); }
void BM_SplitParallel_Birkhoff(benchmark::State& s) { run_split(s, "birkhoff-3", true); }
void BM_SplitSerial_Example4d(benchmark::State& s) { run_split(s, "example-6.3", false); }
void BM_SplitParallel_Example4d(benchmark::State& s) { run_split(s, "example-6.3", true); }
void BM_SplitSerial_Canonical2d(benchmark::State& s) { run_split(s, "canonical-2d", false); }
void BM_SplitParallel_Canonical2d(benchmark::State& s) { run_split(s, "canonical-2d", true); }

BENCHMARK(BM_SplitSerial_Birkhoff)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitParallel_Birkhoff)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitSerial_Example4d)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitParallel_Example4d)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitSerial_Canonical2d)->Arg(9)->Arg(31)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SplitParallel_Canonical2d)->Arg(9)->Arg(31)->Unit(benchmark::kMillisecond);

void run_bases(benchmark::State& state, int threads) {
  const dsplit::IntMatrix m = builtin("birkhoff-3").canonical_matrix();
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads > 0 ? threads : saved);
  for (auto _ : state) {
    auto bases = dsplit::enumerate_column_bases_with_det(m);
    benchmark::DoNotOptimize(bases.size());
  }
  omp_set_num_threads(saved);
}

void BM_BasesSerial(benchmark::State& s) { run_bases(s, 1); }
void BM_BasesParallel(benchmark::State& s) { run_bases(s, 0); }

BENCHMARK(BM_BasesSerial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BasesParallel)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
