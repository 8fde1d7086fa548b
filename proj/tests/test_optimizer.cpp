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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "mrpchan/ga_mrpe.hpp"
#include "mrpchan/gbsm.hpp"
#include "mrpchan/geometry.hpp"
#include "mrpchan/monostatic.hpp"
#include "mrpchan/random.hpp"
#include "mrpchan/scenario.hpp"

using namespace mrpchan;

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

GaConfig small_ga()
{
    GaConfig cfg;
    cfg.population_size = 8;
    cfg.max_iterations = 3;
    cfg.fitness_realizations = 2;
    return cfg;
}

bool slots_equal(const Individual& a, const Individual& b)
{
    if (a.slots.size() != b.slots.size())
        return false;
    for (std::size_t i = 0; i < a.slots.size(); ++i)
    {
        const GeneSlot& x = a.slots[i];
        const GeneSlot& y = b.slots[i];
        if (x.active != y.active || x.d_m != y.d_m || x.aod_deg != y.aod_deg ||
            x.zod_deg != y.zod_deg)
            return false;
    }
    return true;
}

double placement_pl(const RpPlacement& p, double fc_ghz)
{
    std::vector<double> pls;
    for (double d : p.distances_m)
        pls.push_back(pathloss_inh_nlos(fc_ghz, d));
    return aggregate_pl(pls);
}

} // namespace

TEST_CASE("genome accessors expose the active slots in order", "[optimizer]")
{
    Individual ind;
    ind.slots = {{true, 5.0, 10.0, 90.0}, {false, 7.0, 50.0, 90.0}, {true, 9.0, 200.0, 90.0}};

    REQUIRE(ind.active_count() == 2);

    const RpPlacement p = to_placement(ind);
    REQUIRE(p.size() == 2);
    REQUIRE(p.distances_m == std::vector<double>{5.0, 9.0});
    REQUIRE(p.aod_deg == std::vector<double>{10.0, 200.0});
    REQUIRE(p.zod_deg == std::vector<double>{90.0, 90.0});
}

TEST_CASE("first-aod pinning rotates all slots and keeps relative azimuths", "[optimizer]")
{
    Individual ind;
    ind.slots = {{false, 4.0, 33.0, 90.0}, {true, 5.0, 77.0, 90.0}, {true, 6.0, 137.0, 90.0}};

    pin_first_aod(ind);

    // the first active slot departs at exactly zero; everyone else keeps its offset
    REQUIRE(ind.slots[1].aod_deg == 0.0);
    REQUIRE(ind.slots[2].aod_deg == Catch::Approx(60.0).margin(1e-12));
    REQUIRE(ind.slots[0].aod_deg == Catch::Approx(316.0).margin(1e-12));
    // distances and zeniths untouched
    REQUIRE(ind.slots[0].d_m == 4.0);
    REQUIRE(ind.slots[2].zod_deg == 90.0);

    // already pinned: a second call is a bitwise no-op
    const Individual before = ind;
    pin_first_aod(ind);
    REQUIRE(slots_equal(ind, before));
}

TEST_CASE("path-loss repair rescales distances onto the target", "[optimizer]")
{
    const double fc = 28.0;
    const double target = -80.8125;

    SECTION("three equal distances land on the equal-distance solution")
    {
        const std::vector<double> fixed = pl_repair({13.9, 13.9, 13.9}, target, fc);
        REQUIRE(fixed.size() == 3);
        REQUIRE(fixed[0] == fixed[1]);
        REQUIRE(fixed[1] == fixed[2]);
        REQUIRE(fixed[0] == Catch::Approx(equal_distance_for_pl(3, target, fc)).margin(1e-9));
        REQUIRE(fixed[0] == Catch::Approx(6.95061).margin(1e-4));

        std::vector<double> pls;
        for (double d : fixed)
            pls.push_back(pathloss_inh_nlos(fc, d));
        REQUIRE(aggregate_pl(pls) == Catch::Approx(target).margin(1e-12));
    }

    SECTION("ratios between distances are preserved")
    {
        const std::vector<double> fixed = pl_repair({4.0, 8.0, 16.0}, target, fc);
        REQUIRE(fixed[1] / fixed[0] == Catch::Approx(2.0).margin(1e-12));
        REQUIRE(fixed[2] / fixed[0] == Catch::Approx(4.0).margin(1e-12));
    }

    SECTION("distances already on target come back unchanged")
    {
        const double d = equal_distance_for_pl(2, target, fc);
        const std::vector<double> in{d, d};
        const std::vector<double> out = pl_repair(in, target, fc);
        REQUIRE(out[0] == in[0]);
        REQUIRE(out[1] == in[1]);
    }

    SECTION("bad input is rejected")
    {
        REQUIRE_THROWS_AS(pl_repair({}, target, fc), std::invalid_argument);
        REQUIRE_THROWS(pl_repair({-1.0}, target, fc));
    }
}

TEST_CASE("initial population is feasible, on-target and reproducible", "[optimizer]")
{
    GaConfig cfg = small_ga();
    cfg.population_size = 12;
    const MeasuredTargets targets{};
    const ScenarioConfig sc = inh_nlos(28.0);

    const std::vector<Individual> pop = init_population(cfg, targets, sc, RandomStream(7));
    REQUIRE(pop.size() == 12);

    for (const Individual& ind : pop)
    {
        REQUIRE(static_cast<int>(ind.slots.size()) == cfg.constraints.q_max);
        const int q = ind.active_count();
        REQUIRE(q >= cfg.constraints.q_min);
        REQUIRE(q <= cfg.constraints.q_max);

        const RpPlacement p = to_placement(ind);
        REQUIRE(validate_placement(p, cfg.constraints).ok);
        // hard path-loss constraint holds exactly after repair
        REQUIRE(placement_pl(p, sc.fc_ghz) == Catch::Approx(targets.pl_db).margin(1e-9));
        // full-circle azimuth bounds: the gauge freedom is fixed by pinning
        REQUIRE(p.aod_deg.front() == 0.0);
    }

    const std::vector<Individual> again = init_population(cfg, targets, sc, RandomStream(7));
    REQUIRE(again.size() == pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i)
        REQUIRE(slots_equal(pop[i], again[i]));
}

TEST_CASE("infeasible constraint sets are reported, not looped forever", "[optimizer]")
{
    GaConfig cfg = small_ga();
    cfg.constraints.q_min = 5;
    cfg.constraints.q_max = 5;
    cfg.constraints.delta_phi_deg = 120.0; // five RPs cannot keep 120 deg apart on a circle

    REQUIRE_THROWS_AS(init_population(cfg, MeasuredTargets{}, inh_nlos(28.0), RandomStream(1)),
                      std::runtime_error);
}

TEST_CASE("roulette selection favours low fitness and handles edge cases", "[optimizer]")
{
    SECTION("fewer than two individuals is an error")
    {
        RandomStream s(1);
        std::vector<double> one{1.0};
        REQUIRE_THROWS_AS(select_parents(one, s), std::invalid_argument);
    }

    SECTION("the worst individual gets zero weight")
    {
        RandomStream s(2);
        const std::vector<int> picks = select_parents({0.0, 1.0}, s);
        REQUIRE(picks.size() == 2);
        for (int p : picks)
            REQUIRE(p == 0);
    }

    SECTION("infinite fitness is never selected while a finite spread exists")
    {
        RandomStream s(3);
        const std::vector<int> picks = select_parents({kInf, 1.0, 2.0, kInf}, s);
        for (int p : picks)
            REQUIRE(p == 1);
    }

    SECTION("equal fitnesses degrade to uniform selection")
    {
        RandomStream s(4);
        const std::vector<int> picks = select_parents(std::vector<double>(8, 2.0), s);
        REQUIRE(picks.size() == 8);
        std::set<int> seen;
        for (int p : picks)
        {
            REQUIRE(p >= 0);
            REQUIRE(p < 8);
            seen.insert(p);
        }
        REQUIRE(seen.size() > 1);
    }

    SECTION("selection is deterministic for a fixed stream")
    {
        RandomStream s1(5);
        RandomStream s2(5);
        const std::vector<double> fits{3.0, 1.0, 2.0, 5.0};
        REQUIRE(select_parents(fits, s1) == select_parents(fits, s2));
    }
}

TEST_CASE("crossover honours its rate and keeps offspring feasible", "[optimizer]")
{
    GaConfig cfg = small_ga();
    const MeasuredTargets targets{};
    const ScenarioConfig sc = inh_nlos(28.0);
    const std::vector<Individual> pop = init_population(cfg, targets, sc, RandomStream(11));

    SECTION("rate zero returns bitwise parent copies")
    {
        GaConfig zero = cfg;
        zero.crossover_rate = 0.0;
        RandomStream s(1);
        const auto [c1, c2] = crossover(pop[0], pop[1], zero, targets, sc, s);
        REQUIRE(slots_equal(c1, pop[0]));
        REQUIRE(slots_equal(c2, pop[1]));
    }

    SECTION("identical parents produce identical offspring")
    {
        RandomStream s(2);
        const auto [c1, c2] = crossover(pop[2], pop[2], cfg, targets, sc, s);
        REQUIRE(slots_equal(c1, pop[2]));
        REQUIRE(slots_equal(c2, pop[2]));
    }

    SECTION("offspring stay feasible and on the path-loss target")
    {
        RandomStream s(3);
        for (int rep = 0; rep < 8; ++rep)
        {
            const std::size_t i = static_cast<std::size_t>(rep) % pop.size();
            const std::size_t j = static_cast<std::size_t>(rep + 3) % pop.size();
            const auto [c1, c2] = crossover(pop[i], pop[j], cfg, targets, sc, s);
            for (const Individual* c : {&c1, &c2})
            {
                const RpPlacement p = to_placement(*c);
                REQUIRE(validate_placement(p, cfg.constraints).ok);
                REQUIRE(placement_pl(p, sc.fc_ghz) == Catch::Approx(targets.pl_db).margin(1e-9));
            }
        }
    }

    SECTION("mismatched genome lengths are rejected")
    {
        Individual shorter = pop[0];
        shorter.slots.pop_back();
        RandomStream s(4);
        REQUIRE_THROWS_AS(crossover(pop[0], shorter, cfg, targets, sc, s), std::invalid_argument);
    }
}

TEST_CASE("mutation honours its rate and the count bounds", "[optimizer]")
{
    GaConfig cfg = small_ga();
    const MeasuredTargets targets{};
    const ScenarioConfig sc = inh_nlos(28.0);
    const std::vector<Individual> pop = init_population(cfg, targets, sc, RandomStream(13));

    SECTION("rate zero is a bitwise no-op")
    {
        GaConfig zero = cfg;
        zero.mutation_rate = 0.0;
        RandomStream s(1);
        const Individual m = mutate(pop[0], zero, targets, sc, s);
        REQUIRE(slots_equal(m, pop[0]));
    }

    SECTION("rate one still yields feasible on-target individuals")
    {
        GaConfig full = cfg;
        full.mutation_rate = 1.0;
        RandomStream s(2);
        for (const Individual& ind : pop)
        {
            const Individual m = mutate(ind, full, targets, sc, s);
            const int q = m.active_count();
            REQUIRE(q >= cfg.constraints.q_min);
            REQUIRE(q <= cfg.constraints.q_max);
            const RpPlacement p = to_placement(m);
            REQUIRE(validate_placement(p, cfg.constraints).ok);
            REQUIRE(placement_pl(p, sc.fc_ghz) == Catch::Approx(targets.pl_db).margin(1e-9));
        }
    }

    SECTION("mutation is deterministic for a fixed stream")
    {
        RandomStream s1(3);
        RandomStream s2(3);
        const Individual m1 = mutate(pop[1], cfg, targets, sc, s1);
        const Individual m2 = mutate(pop[1], cfg, targets, sc, s2);
        REQUIRE(slots_equal(m1, m2));
    }
}

TEST_CASE("fitness scores placements and rejects invalid genomes", "[optimizer]")
{
    GaConfig cfg = small_ga();
    const MeasuredTargets targets{};
    const ScenarioConfig sc = inh_nlos(28.0);

    SECTION("an all-dormant genome is infinitely bad")
    {
        Individual ind;
        ind.slots.resize(5);
        REQUIRE(fitness(ind, targets, sc, cfg, RandomStream(1)) == kInf);
    }

    SECTION("a separation violation is infinitely bad")
    {
        Individual ind;
        ind.slots = {{true, 6.0, 0.0, 90.0}, {true, 8.0, 5.0, 90.0}}; // 5 < delta_phi = 20
        REQUIRE(fitness(ind, targets, sc, cfg, RandomStream(1)) == kInf);
    }

    SECTION("valid individuals score finite and reproducibly")
    {
        const std::vector<Individual> pop = init_population(cfg, targets, sc, RandomStream(17));
        const double f1 = fitness(pop[0], targets, sc, cfg, RandomStream(9));
        const double f2 = fitness(pop[0], targets, sc, cfg, RandomStream(9));
        REQUIRE(std::isfinite(f1));
        REQUIRE(f1 >= 0.0);
        REQUIRE(f1 == f2);
    }

    SECTION("common random numbers make identical genomes score identically")
    {
        const std::vector<Individual> pop = init_population(cfg, targets, sc, RandomStream(17));
        Individual copy = pop[3];
        const RandomStream eval(21);
        REQUIRE(fitness(pop[3], targets, sc, cfg, eval) ==
                fitness(copy, targets, sc, cfg, eval));
    }
}

TEST_CASE("the full search runs, converges and reproduces", "[optimizer]")
{
    GaConfig cfg = small_ga();
    cfg.root_seed = 29;
    const MeasuredTargets targets{};
    const ScenarioConfig sc = inh_nlos(28.0);

    const OptimizationResult res = run_ga(cfg, targets, sc);

    REQUIRE(res.generations_run >= 1);
    REQUIRE(res.generations_run <= cfg.max_iterations);
    REQUIRE(res.fitness_trace.size() == static_cast<std::size_t>(res.generations_run) + 1);
    for (std::size_t i = 1; i < res.fitness_trace.size(); ++i)
        REQUIRE(res.fitness_trace[i] <= res.fitness_trace[i - 1]);
    REQUIRE(res.best_fitness == res.fitness_trace.back());

    REQUIRE(validate_placement(res.best_placement, cfg.constraints).ok);
    REQUIRE(placement_pl(res.best_placement, sc.fc_ghz) ==
            Catch::Approx(targets.pl_db).margin(1e-9));

    REQUIRE_FALSE(res.top_individuals.empty());
    for (std::size_t i = 1; i < res.top_individuals.size(); ++i)
        REQUIRE(res.top_individuals[i - 1].fitness <= res.top_individuals[i].fitness);
    REQUIRE(res.top_individuals.front().fitness == res.best_fitness);

    const OptimizationResult again = run_ga(cfg, targets, sc);
    REQUIRE(again.best_fitness == res.best_fitness);
    REQUIRE(again.best_placement.distances_m == res.best_placement.distances_m);
    REQUIRE(again.best_placement.aod_deg == res.best_placement.aod_deg);
    REQUIRE(again.best_placement.zod_deg == res.best_placement.zod_deg);
    REQUIRE(again.fitness_trace == res.fitness_trace);
}

TEST_CASE("search configuration is validated up front", "[optimizer]")
{
    const MeasuredTargets targets{};
    const ScenarioConfig sc = inh_nlos(28.0);

    GaConfig bad = small_ga();
    bad.population_size = 1;
    REQUIRE_THROWS_AS(run_ga(bad, targets, sc), std::invalid_argument);

    bad = small_ga();
    bad.crossover_rate = 1.5;
    REQUIRE_THROWS_AS(run_ga(bad, targets, sc), std::invalid_argument);

    bad = small_ga();
    bad.mutation_rate = -0.1;
    REQUIRE_THROWS_AS(run_ga(bad, targets, sc), std::invalid_argument);

    bad = small_ga();
    bad.fitness_realizations = 0;
    REQUIRE_THROWS_AS(run_ga(bad, targets, sc), std::invalid_argument);

    bad = small_ga();
    bad.max_iterations = -1;
    REQUIRE_THROWS_AS(run_ga(bad, targets, sc), std::invalid_argument);
}
