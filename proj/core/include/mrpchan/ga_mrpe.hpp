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

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mrpchan/random.hpp"
#include "mrpchan/scenario.hpp"
#include "mrpchan/types.hpp"

namespace mrpchan
{

// Genetic-algorithm controls for RP-placement extraction. Weights are per-unit
// mismatch costs; the path-loss constraint is enforced exactly by distance
// rescaling when w_pl_hard is set (the default), otherwise w_pl acts as a
// soft penalty per dB.
struct GaConfig
{
    int max_iterations = 20;       // E
    double convergence_eps = 1e-6; // stop when the best-fitness improvement falls to this
    int population_size = 40;      // L
    double crossover_rate = 1.0;   // R_cro
    double mutation_rate = 0.2;    // R_mut
    bool w_pl_hard = true;
    double w_pl = 0.0;             // [1/dB], used only when !w_pl_hard
    double w_ds = 1.0e8;           // [1/s]: a 10 ns delay-spread error costs 1
    double w_as_az = 1.0;          // [1/deg]
    double w_as_zen = 0.0;         // [1/deg]
    ConstraintSet constraints{};
    int fitness_realizations = 30; // R: Monte Carlo averages per fitness evaluation
    double top_fraction = 0.05;    // fraction of all evaluations kept in the result snapshot
    std::uint64_t root_seed = 1;
};

// One genome slot: an RP candidate that is either active or dormant. Dormant slots
// keep their gene values so crossover and reactivation can reuse them.
struct GeneSlot
{
    bool active = false;
    double d_m = 0.0;
    double aod_deg = 0.0;
    double zod_deg = 90.0;
};

// Variable-RP-count genome: q_max slots, of which the active ones form the placement.
struct Individual
{
    std::vector<GeneSlot> slots;

    int active_count() const;
};

// Placement of the active slots, in slot order.
RpPlacement to_placement(const Individual& ind);

// Rotate every aod gene so the first active slot departs at exactly 0 degrees.
// Relative azimuth geometry (and thus the angular spread) is unchanged.
void pin_first_aod(Individual& ind);

struct ScoredIndividual
{
    Individual ind;
    double fitness = 0.0;
};

struct OptimizationResult
{
    RpPlacement best_placement;
    double best_fitness = 0.0;
    std::vector<double> fitness_trace;            // per-generation best, nonincreasing
    std::vector<ScoredIndividual> top_individuals; // best top_fraction of all evaluations
    int generations_run = 0;
};

// Weighted mismatch between the modeled statistics of an individual's placement and the
// targets: eta = w_ds |DS - DS0| + w_as_az |AS_az - AS0| (+ zenith and soft-PL terms when
// configured). Modeled DS/AS are means over cfg.fitness_realizations compositions drawn
// from stream.fork(0..R-1); passing the same stream to every individual of a generation
// gives common random numbers, so identical genomes score identically. Invalid
// individuals score +infinity.
double fitness(const Individual& ind, const MeasuredTargets& targets, const ScenarioConfig& sc,
               const GaConfig& cfg, const RandomStream& stream);

// Rescale all distances by the unique factor s = (PL_lin_current / PL_lin_target)^(1/3.83)
// so the aggregate path loss equals pl_target_db exactly. Angles are untouched.
std::vector<double> pl_repair(const std::vector<double>& distances_m, double pl_target_db,
                              double fc_ghz);

// L random individuals: per slot uniform genes within bounds, a uniform-random number of
// dormant slots (keeping at least q_min active), bounded resampling until separations
// hold, path-loss repair, first-aod pinning. Throws std::runtime_error naming the binding
// constraint when the retry budget is exhausted.
std::vector<Individual> init_population(const GaConfig& cfg, const MeasuredTargets& targets,
                                        const ScenarioConfig& sc, const RandomStream& stream);

// Roulette-wheel selection: probability of index l proportional to (max eta - eta_l);
// uniform when all fitnesses are equal. Returns population_size indices, drawn with
// replacement. Individuals with infinite fitness get zero selection weight.
std::vector<int> select_parents(const std::vector<double>& fitnesses, RandomStream& stream);

// Single-point crossover over the slot-major gene array (d, aod, zod per slot; a slot's
// activity marker travels with its distance gene), applied with probability
// crossover_rate, followed by repair. Irreparable offspring fall back to parent copies.
std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b,
                                            const GaConfig& cfg, const MeasuredTargets& targets,
                                            const ScenarioConfig& sc, RandomStream& stream);

// Per-gene redraw with probability mutation_rate plus a per-slot activity toggle with the
// same probability (clamped to keep the active count within [q_min, q_max]), followed by
// repair. An irreparable result falls back to the input individual.
Individual mutate(const Individual& ind, const GaConfig& cfg, const MeasuredTargets& targets,
                  const ScenarioConfig& sc, RandomStream& stream);

// Full search: init, then per generation select / crossover / mutate / evaluate with
// elitism (the best individual survives unchanged, carrying its recorded fitness).
// Stops when the best-fitness improvement is <= convergence_eps or after max_iterations.
OptimizationResult run_ga(const GaConfig& cfg, const MeasuredTargets& targets,
                          const ScenarioConfig& sc);

} // namespace mrpchan
