// SPDX-License-Identifier: Apache-2.0
//
// subthz-rx: energy and spectral efficiency analysis of sub-THz MU-MIMO receivers
// Copyright (C) 2026 The subthz-rx authors
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

#include <benchmark/benchmark.h>

#include "subthz/beamforming.hpp"
#include "subthz/power.hpp"
#include "subthz/sim.hpp"

using namespace subthz;

namespace
{
    ReceiverConfig bench_config(ArchitectureKind kind, std::size_t rows, std::size_t cols, std::size_t k)
    {
        auto cfg = make_config(kind, ArrayGeometry(rows, cols), 8);
        cfg.user_array = ArrayGeometry(4, 4);
        cfg.subcarriers = k;
        return cfg;
    }
}

static void BM_TotalPower(benchmark::State &state)
{
    const auto cfg = make_config(ArchitectureKind::FullyConnectedHybrid, ArrayGeometry(32, 16), 8);
    const ComponentPowerCatalog cat;
    for (auto _ : state)
        benchmark::DoNotOptimize(total_power(cfg, cat));
}
BENCHMARK(BM_TotalPower);

static void BM_GenerateChannel(benchmark::State &state)
{
    const auto cfg = bench_config(ArchitectureKind::DigitalArray, 32, std::size_t(state.range(0)), 64);
    ClusterChannelParams p;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_channel(cfg, p));
}
BENCHMARK(BM_GenerateChannel)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_RefineAnalogCombiner(benchmark::State &state)
{
    const auto kind = state.range(0) == 0 ? ArchitectureKind::SubArrayHybrid : ArchitectureKind::FullyConnectedHybrid;
    const auto cfg = bench_config(kind, 32, 4, 64);
    const auto ch = generate_channel(cfg, {});
    const auto v = design_tx_precoder(ch, cfg);
    const auto g = effective_channel(ch, v);
    const auto w = design_analog_combiner(g, cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(refine_analog_combiner(w, g, cfg, 1, 0.0));
}
BENCHMARK(BM_RefineAnalogCombiner)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_RunTrial(benchmark::State &state)
{
    const auto kind = ArchitectureKind(state.range(0));
    const auto cfg = bench_config(kind, 32, 4, 64);
    SimulationParams p;
    p.symbols = 1000;
    const auto ch = generate_channel(cfg, {});
    for (auto _ : state)
        benchmark::DoNotOptimize(run_trial(cfg, p, ch, 1));
}
BENCHMARK(BM_RunTrial)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
