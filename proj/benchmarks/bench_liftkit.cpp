// Copyright 2026 The liftkit Authors
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

#include "liftkit/certificate.hpp"
#include "liftkit/designs.hpp"
#include "liftkit/experiments.hpp"
#include "liftkit/measurement.hpp"
#include "liftkit/solver.hpp"

using namespace liftkit;

namespace {

HermMat random_herm(int d, Rng& rng) {
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.complex_normal();
  return HermMat(g);
}

void BM_PsdTraceProject(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(1);
  const HermMat z = random_herm(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(psd_trace_project(z, 1.0));
}
BENCHMARK(BM_PsdTraceProject)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

// Full recovery at m = 6d from stabilizer draws.
void BM_Recover(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const DesignEnsemble e = build_ensemble(EnsembleKind::stabilizer, d);
  Rng rng(2);
  const ComplexVec x = haar_signal(d, rng);
  const MeasurementRecord rec = measure(x, sample_vectors(e, 6 * d, rng));
  int iterations = 0;
  for (auto _ : state) {
    const SolverResult res = recover(rec);
    iterations = res.iterations;
    benchmark::DoNotOptimize(res.X_hat);
  }
  state.counters["iterations"] = iterations;
}
BENCHMARK(BM_Recover)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_FramePotential(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DesignEnsemble e = stabilizer_states(n);
  for (auto _ : state) benchmark::DoNotOptimize(verify_design(e, 3).frame_potential);
  state.counters["vectors"] = static_cast<double>(e.size());
}
BENCHMARK(BM_FramePotential)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Golfing(benchmark::State& state) {
  const DesignEnsemble e = stabilizer_states(3);
  Rng rng(3);
  const ComplexVec x = haar_signal(8, rng);
  GolfingParams p;
  p.assume_verified = true;
  for (auto _ : state) benchmark::DoNotOptimize(golfing_certificate(x, e, p).success);
}
BENCHMARK(BM_Golfing)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
