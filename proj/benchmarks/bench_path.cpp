// Copyright 2026 The Liouville Authors
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

// Path sampling, pair counting (cell grid vs the quadratic reference),
// and the quantum clock integral.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "liouville/brownian.hpp"
#include "liouville/clock.hpp"
#include "liouville/geometry.hpp"
#include "liouville/gff.hpp"

namespace {

using namespace liouville;

void BM_SamplePath(benchmark::State& state) {
  DomainSpec square;
  double dt = 1.0 / static_cast<double>(state.range(0));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    BrownianPath path =
        sample_path(square, domain_center(square), dt, 1.0, 5, rep++);
    benchmark::DoNotOptimize(path.positions.data());
  }
}
BENCHMARK(BM_SamplePath)->Arg(16384)->Arg(65536)->Arg(262144);

void BM_PairCountCells(benchmark::State& state) {
  DomainSpec square;
  auto k = static_cast<int>(state.range(0));
  BrownianPath path = sample_path(square, domain_center(square),
                                  6.103515625e-05, 1.0, 5, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_count(path, k, 0.0));
  }
}
BENCHMARK(BM_PairCountCells)->Arg(4)->Arg(5)->Arg(6)->Arg(7);

void BM_PairCountBrute(benchmark::State& state) {
  DomainSpec square;
  auto k = static_cast<int>(state.range(0));
  BrownianPath path = sample_path(square, domain_center(square),
                                  6.103515625e-05, 1.0, 5, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_count_brute(path, k, 0.0));
  }
}
BENCHMARK(BM_PairCountBrute)->Arg(4)->Arg(5);

void BM_ClockProcess(benchmark::State& state) {
  DomainSpec square;
  auto modes = static_cast<std::int64_t>(state.range(0));
  SpectralGFF field = sample_gff(square, modes, 7);
  BrownianPath path = sample_path(square, domain_center(square),
                                  6.103515625e-05, 0.05, 5, 0);
  for (auto _ : state) {
    ClockProcess clock =
        clock_process(field, path, 1.0, 5, VarianceMode::kAnalyticModeSum);
    benchmark::DoNotOptimize(clock.values.data());
  }
}
BENCHMARK(BM_ClockProcess)->Arg(16384)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
