// SPDX-License-Identifier: Apache-2.0
//
// mrpchan - monostatic background radio channel simulator with multi-reference-point composition
// Copyright (C) 2026 mrpchan contributors
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include <cstdint>

#include "mrpchan/ga_mrpe.hpp"
#include "mrpchan/gbsm.hpp"
#include "mrpchan/monostatic.hpp"
#include "mrpchan/random.hpp"
#include "mrpchan/scenario.hpp"
#include "mrpchan/stats.hpp"

using namespace mrpchan;

namespace
{

RpPlacement ring(int q)
{
    RpPlacement p;
    const double d = equal_distance_for_pl(q, -80.8125, 28.0);
    for (int i = 0; i < q; ++i)
    {
        p.distances_m.push_back(d);
        p.aod_deg.push_back(360.0 * static_cast<double>(i) / static_cast<double>(q));
        p.zod_deg.push_back(90.0);
    }
    return p;
}

void bm_assemble_subchannel(benchmark::State& state)
{
    const ScenarioConfig sc = inh_nlos(28.0);
    const PlacementEntry entry{7.0, 120.0, 90.0};
    std::uint64_t i = 0;
    for (auto _ : state)
    {
        const SubChannelRealization sub = assemble_subchannel(0, entry, sc, RandomStream(++i));
        benchmark::DoNotOptimize(sub.paths.data());
    }
}
BENCHMARK(bm_assemble_subchannel);

void bm_compose_channel(benchmark::State& state)
{
    const ScenarioConfig sc = inh_nlos(28.0);
    const RpPlacement p = ring(static_cast<int>(state.range(0)));
    std::uint64_t i = 0;
    for (auto _ : state)
    {
        const ChannelRealization ch = compose_channel(p, sc, RandomStream(++i), false);
        benchmark::DoNotOptimize(ch.weighted_paths.data());
    }
}
BENCHMARK(bm_compose_channel)->Arg(1)->Arg(3)->Arg(5);

void bm_delay_spread(benchmark::State& state)
{
    const ScenarioConfig sc = inh_nlos(28.0);
    const ChannelRealization ch = compose_channel(ring(3), sc, RandomStream(1), false);
    const PathList paths = to_pathlist(ch.weighted_paths);
    for (auto _ : state)
        benchmark::DoNotOptimize(rms_delay_spread(paths));
}
BENCHMARK(bm_delay_spread);

void bm_angle_spread(benchmark::State& state)
{
    const ScenarioConfig sc = inh_nlos(28.0);
    const ChannelRealization ch = compose_channel(ring(3), sc, RandomStream(1), false);
    const PathList paths = to_pathlist(ch.weighted_paths);
    for (auto _ : state)
        benchmark::DoNotOptimize(circular_angle_spread(paths, AngleAxis::azimuth));
}
BENCHMARK(bm_angle_spread);

void bm_fitness(benchmark::State& state)
{
    GaConfig cfg;
    cfg.fitness_realizations = static_cast<int>(state.range(0));
    const ScenarioConfig sc = inh_nlos(28.0);
    const MeasuredTargets targets{};
    const std::vector<Individual> pop = init_population(cfg, targets, sc, RandomStream(1));
    const RandomStream eval(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(fitness(pop[0], targets, sc, cfg, eval));
}
BENCHMARK(bm_fitness)->Arg(1)->Arg(30);

void bm_render_cir(benchmark::State& state)
{
    const ScenarioConfig sc = inh_nlos(28.0);
    const PlacementEntry entry{7.0, 120.0, 90.0};
    const std::vector<SubChannelRealization> subs{assemble_subchannel(0, entry, sc, RandomStream(1))};
    const ArrayGeometry geom{};
    for (auto _ : state)
    {
        const auto taps = render_cir(subs, {1.0}, geom, sc.fc_ghz, 0.0);
        benchmark::DoNotOptimize(taps.data());
    }
}
BENCHMARK(bm_render_cir);

} // namespace

BENCHMARK_MAIN();
