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

// Field construction and circle-average evaluation costs.  The batch
// evaluator amortizes the mode sum into one matrix product per epsilon;
// the per-point path recomputes the sine tables every call.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "liouville/geometry.hpp"
#include "liouville/gff.hpp"
#include "liouville/rng.hpp"

namespace {

using namespace liouville;

std::vector<Point> interior_points(std::int64_t n) {
  Philox rng(99, stream_id(0, StreamPurpose::kMisc));
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    pts.emplace_back(0.25 + 0.5 * rng.uniform(), 0.25 + 0.5 * rng.uniform());
  }
  return pts;
}

void BM_SampleField(benchmark::State& state) {
  DomainSpec square;
  auto modes = static_cast<std::int64_t>(state.range(0));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    SpectralGFF field = sample_gff(square, modes, 7, rep++);
    benchmark::DoNotOptimize(field.coeff.data());
  }
}
BENCHMARK(BM_SampleField)->Arg(16384)->Arg(65536)->Arg(262144);

void BM_CircleAveragePerPoint(benchmark::State& state) {
  DomainSpec square;
  SpectralGFF field = sample_gff(square, state.range(0), 7);
  std::vector<Point> pts = interior_points(256);
  CircleAverageEvaluator eval = circle_evaluator(field, 0.03125);
  for (auto _ : state) {
    double acc = 0.0;
    for (Point z : pts) acc += circle_average(eval, z);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_CircleAveragePerPoint)->Arg(16384)->Arg(65536);

void BM_CircleAverageBatch(benchmark::State& state) {
  DomainSpec square;
  SpectralGFF field = sample_gff(square, state.range(0), 7);
  std::vector<Point> pts = interior_points(256);
  FieldBatchEvaluator eval(field, pts);
  for (auto _ : state) {
    std::vector<double> vals = eval.values(0.03125);
    benchmark::DoNotOptimize(vals.data());
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_CircleAverageBatch)->Arg(16384)->Arg(65536);

void BM_BatchVariances(benchmark::State& state) {
  DomainSpec square;
  SpectralGFF field = sample_gff(square, state.range(0), 7);
  std::vector<Point> pts = interior_points(256);
  FieldBatchEvaluator eval(field, pts);
  for (auto _ : state) {
    std::vector<double> vars = eval.variances(0.03125);
    benchmark::DoNotOptimize(vars.data());
  }
}
BENCHMARK(BM_BatchVariances)->Arg(16384)->Arg(65536);

}  // namespace

BENCHMARK_MAIN();
