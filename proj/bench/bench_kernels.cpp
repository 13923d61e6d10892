// misodelay: delay bounds and queue simulation for the multiuser MISO downlink
// Copyright (C) 2026 The misodelay authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "misodelay/queue_sim.hpp"
#include "misodelay/snc_analysis.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

using namespace misodelay;

namespace
{
    SystemConfig reference_system()
    {
        return SystemConfig{8, 120, 1000, db_to_linear(15.0), 180.0, 60, Scheme::kZfbf};
    }

    SystemConfig small_system()
    {
        return SystemConfig{4, 8, 100, db_to_linear(10.0), 120.0, 8, Scheme::kZfDpc};
    }

    void BM_SweepSerial(benchmark::State& state)
    {
        const SystemConfig c = reference_system();
        for (auto _ : state)
            benchmark::DoNotOptimize(sweep_superframe_serial(c));
    }

    void BM_SweepParallel(benchmark::State& state)
    {
        const SystemConfig c = reference_system();
        for (auto _ : state)
            benchmark::DoNotOptimize(sweep_superframe(c));
        state.counters["threads"] = omp_get_max_threads();
    }

    SimOptions bench_sim_options()
    {
        SimOptions o;
        o.superframes = 50000;
        o.replications = 8;
        o.seed = 3;
        return o;
    }

    void BM_SimulateSerial(benchmark::State& state)
    {
        const SystemConfig c = small_system();
        const SimOptions o = bench_sim_options();
        for (auto _ : state)
            benchmark::DoNotOptimize(simulate_serial(c, 3, o));
        state.SetItemsProcessed(state.iterations() * o.superframes * o.replications);
    }

    void BM_SimulateParallel(benchmark::State& state)
    {
        const SystemConfig c = small_system();
        const SimOptions o = bench_sim_options();
        for (auto _ : state)
            benchmark::DoNotOptimize(simulate(c, 3, o));
        state.SetItemsProcessed(state.iterations() * o.superframes * o.replications);
        state.counters["threads"] = omp_get_max_threads();
    }
} // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SimulateParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
