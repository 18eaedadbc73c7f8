// Copyright 2026 The kduncert Authors
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

#include "kduncert/kd.hpp"
#include "kduncert/random.hpp"
#include "kduncert/uncertainty.hpp"

namespace {

using namespace kduncert;

void BM_TraceNorm(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    Rng rng(1);
    const ComplexMatrix m = ginibre(d, d, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_norm(m));
    }
}
BENCHMARK(BM_TraceNorm)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_KdTable(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const DensityMatrix rho = random_density(d, d, std::uint64_t{2});
    const Povm povm = random_povm(d, d, std::uint64_t{3});
    Rng rng(4);
    const RankOnePvm basis = random_rank_one_pvm(d, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kd_table(rho, povm, basis));
    }
}
BENCHMARK(BM_KdTable)->Arg(2)->Arg(4)->Arg(8);

void BM_SupDiagonalModulus(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const DensityMatrix rho = random_density(d, d, std::uint64_t{5});
    const Povm povm = random_povm(d, 2, std::uint64_t{6});
    const ComplexMatrix op = povm.effect(0) * rho.matrix();
    OptimizerConfig cfg;
    cfg.n_restarts = 8;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sup_diagonal_functional(op, DiagonalFunctional::Modulus, cfg));
    }
}
BENCHMARK(BM_SupDiagonalModulus)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_DecomposeNCl(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const DensityMatrix rho = random_density(d, d, std::uint64_t{7});
    const Povm povm = random_povm(d, d + 1, std::uint64_t{8});
    const OptimizerConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose(rho, povm, Flavor::NCl, cfg));
    }
}
BENCHMARK(BM_DecomposeNCl)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RelationBound(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const DensityMatrix rho = random_density(d, d, std::uint64_t{9});
    Rng rng(10);
    const RankOnePvm a = random_rank_one_pvm(d, rng);
    const RankOnePvm b = random_rank_one_pvm(d, rng);
    const OptimizerConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(uncertainty_relation_bound(rho, a, b, cfg));
    }
}
BENCHMARK(BM_RelationBound)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
