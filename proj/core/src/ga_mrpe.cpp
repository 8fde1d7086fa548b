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

#include "mrpchan/ga_mrpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mrpchan/gbsm.hpp"
#include "mrpchan/geometry.hpp"
#include "mrpchan/monostatic.hpp"
#include "mrpchan/stats.hpp"

namespace mrpchan
{

namespace
{

// Top-level substream ids of a GA run.
enum GaStream : std::uint64_t
{
    kStreamInit = 0,
    kStreamEval = 1,
    kStreamOps = 2,
};

constexpr int kSeparationRetries = 64; // gene resamples per repair pass
constexpr int kRepairPasses = 8;       // separation + path-loss interleavings
constexpr int kInitRetries = 256;      // fresh draws per individual at init

bool full_circle(const ConstraintSet& c)
{
    return c.aod_max_deg - c.aod_min_deg >= 360.0;
}

// Indices of active slots, in slot order.
std::vector<int> active_indices(const Individual& ind)
{
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(ind.slots.size()); ++i)
        if (ind.slots[i].active)
            idx.push_back(i);
    return idx;
}

// Resample genes of later slots until pairwise separations hold; false when the
// retry budget runs out.
bool repair_separations(Individual& ind, const ConstraintSet& c, RandomStream& stream)
{
    for (int tries = 0; tries < kSeparationRetries; ++tries)
    {
        const std::vector<int> act = active_indices(ind);
        bool violated = false;
        for (std::size_t a = 0; a < act.size() && !violated; ++a)
        {
            for (std::size_t b = a + 1; b < act.size() && !violated; ++b)
            {
                GeneSlot& sj = ind.slots[static_cast<std::size_t>(act[b])];
                const GeneSlot& si = ind.slots[static_cast<std::size_t>(act[a])];
                if (std::fabs(si.d_m - sj.d_m) < c.delta_d_m)
                {
                    sj.d_m = stream.uniform(c.d_min_m, c.d_max_m);
                    violated = true;
                }
                else if (circular_separation_deg(si.aod_deg, sj.aod_deg) < c.delta_phi_deg)
                {
                    sj.aod_deg = stream.uniform(c.aod_min_deg, std::min(c.aod_max_deg, 360.0));
                    violated = true;
                }
                else if (std::fabs(si.zod_deg - sj.zod_deg) < c.delta_theta_deg)
                {
                    sj.zod_deg = stream.uniform(c.zod_min_deg, c.zod_max_deg);
                    violated = true;
                }
            }
        }
        if (!violated)
            return true;
    }
    return false;
}

// Full repair chain: active-count floor, separation resampling, path-loss rescale,
// first-aod pinning, final validation. Returns false when the individual cannot be
// made feasible.
bool repair(Individual& ind, const GaConfig& cfg, const MeasuredTargets& targets,
            const ScenarioConfig& sc, RandomStream& stream)
{
    const ConstraintSet& c = cfg.constraints;
    const int q_max = static_cast<int>(ind.slots.size());

    // enforce the active-count floor by reviving dormant slots (their genes are kept)
    int active = ind.active_count();
    if (active > q_max)
        return false;
    while (active < c.q_min)
    {
        std::vector<int> dormant;
        for (int i = 0; i < q_max; ++i)
            if (!ind.slots[static_cast<std::size_t>(i)].active)
                dormant.push_back(i);
        if (dormant.empty())
            return false;
        const int pick = dormant[static_cast<std::size_t>(
            stream.uniform_int(0, static_cast<int>(dormant.size()) - 1))];
        ind.slots[static_cast<std::size_t>(pick)].active = true;
        ++active;
    }

    for (int pass = 0; pass < kRepairPasses; ++pass)
    {
        if (!repair_separations(ind, c, stream))
            return false;

        if (cfg.w_pl_hard)
        {
            const std::vector<int> act = active_indices(ind);
            std::vector<double> d;
            d.reserve(act.size());
            for (int i : act)
                d.push_back(ind.slots[static_cast<std::size_t>(i)].d_m);
            const std::vector<double> fixed = pl_repair(d, targets.pl_db, sc.fc_ghz);
            bool in_bounds = true;
            for (double v : fixed)
                in_bounds = in_bounds && v >= c.d_min_m && v <= c.d_max_m;
            if (!in_bounds)
                return false;
            for (std::size_t k = 0; k < act.size(); ++k)
                ind.slots[static_cast<std::size_t>(act[k])].d_m = fixed[k];
        }

        if (full_circle(c))
            pin_first_aod(ind);

        const ValidationReport rep = validate_placement(to_placement(ind), c);
        if (rep.ok)
            return true;
        // the path-loss rescale may have broken a distance separation; go around again
    }
    return false;
}

} // namespace

int Individual::active_count() const
{
    int n = 0;
    for (const GeneSlot& s : slots)
        n += s.active ? 1 : 0;
    return n;
}

RpPlacement to_placement(const Individual& ind)
{
    RpPlacement p;
    for (const GeneSlot& s : ind.slots)
    {
        if (!s.active)
            continue;
        p.distances_m.push_back(s.d_m);
        p.aod_deg.push_back(s.aod_deg);
        p.zod_deg.push_back(s.zod_deg);
    }
    return p;
}

void pin_first_aod(Individual& ind)
{
    const GeneSlot* first = nullptr;
    for (const GeneSlot& s : ind.slots)
        if (s.active)
        {
            first = &s;
            break;
        }
    if (first == nullptr)
        return;
    const double shift = first->aod_deg;
    if (shift == 0.0)
        return;
    for (GeneSlot& s : ind.slots)
        s.aod_deg = wrap360(s.aod_deg - shift);
}

std::vector<double> pl_repair(const std::vector<double>& distances_m, double pl_target_db,
                              double fc_ghz)
{
    if (distances_m.empty())
        throw std::invalid_argument("pl_repair: empty distance list");
    std::vector<double> pls;
    pls.reserve(distances_m.size());
    for (double d : distances_m)
        pls.push_back(pathloss_inh_nlos(fc_ghz, d)); // throws on d <= 0
    const double current_db = aggregate_pl(pls);

    // gain falls 38.3 dB per distance decade, so one common rescale hits the target
    const double s = std::pow(10.0, (current_db - pl_target_db) / 38.3);
    if (std::fabs(s - 1.0) < 1e-12)
        return distances_m;
    std::vector<double> out;
    out.reserve(distances_m.size());
    for (double d : distances_m)
        out.push_back(d * s);
    return out;
}

double fitness(const Individual& ind, const MeasuredTargets& targets, const ScenarioConfig& sc,
               const GaConfig& cfg, const RandomStream& stream)
{
    constexpr double kInf = std::numeric_limits<double>::infinity();
    if (ind.active_count() == 0)
        return kInf;

    Individual pinned = ind;
    if (full_circle(cfg.constraints))
        pin_first_aod(pinned);
    const RpPlacement placement = to_placement(pinned);
    if (!validate_placement(placement, cfg.constraints).ok)
        return kInf;

    const int runs = cfg.fitness_realizations;
    double ds_acc = 0.0;
    double as_acc = 0.0;
    double zen_acc = 0.0;
    const bool use_zen = cfg.w_as_zen > 0.0 && targets.as_zen_deg.has_value();
    for (int r = 0; r < runs; ++r)
    {
        const ChannelRealization ch = compose_channel(placement, sc, stream.fork(r), false);
        const PathList paths = to_pathlist(ch.weighted_paths);
        ds_acc += rms_delay_spread(paths);
        as_acc += circular_angle_spread(paths, AngleAxis::azimuth);
        if (use_zen)
            zen_acc += circular_angle_spread(paths, AngleAxis::zenith);
    }
    const double inv = 1.0 / static_cast<double>(runs);
    double eta = cfg.w_ds * std::fabs(ds_acc * inv - targets.ds_s) +
                 cfg.w_as_az * std::fabs(as_acc * inv - targets.as_az_deg);
    if (use_zen)
        eta += cfg.w_as_zen * std::fabs(zen_acc * inv - *targets.as_zen_deg);
    if (!cfg.w_pl_hard)
    {
        std::vector<double> pls;
        pls.reserve(placement.size());
        for (double d : placement.distances_m)
            pls.push_back(pathloss_inh_nlos(sc.fc_ghz, d));
        eta += cfg.w_pl * std::fabs(aggregate_pl(pls) - targets.pl_db);
    }
    return eta;
}

std::vector<Individual> init_population(const GaConfig& cfg, const MeasuredTargets& targets,
                                        const ScenarioConfig& sc, const RandomStream& stream)
{
    const ConstraintSet& c = cfg.constraints;
    if (cfg.population_size < 2)
        throw std::invalid_argument("init_population: population_size must be >= 2");
    if (c.q_min < 1 || c.q_min > c.q_max)
        throw std::invalid_argument("init_population: bad RP count bounds");

    std::vector<Individual> pop;
    pop.reserve(static_cast<std::size_t>(cfg.population_size));
    std::string last_violation = "unknown";

    for (int l = 0; l < cfg.population_size; ++l)
    {
        const RandomStream ind_stream = stream.fork(static_cast<std::uint64_t>(l));
        bool done = false;
        for (int attempt = 0; attempt < kInitRetries && !done; ++attempt)
        {
            RandomStream draw = ind_stream.fork(static_cast<std::uint64_t>(attempt));
            Individual ind;
            ind.slots.resize(static_cast<std::size_t>(c.q_max));
            for (GeneSlot& s : ind.slots)
            {
                s.active = true;
                s.d_m = draw.uniform(c.d_min_m, c.d_max_m);
                s.aod_deg = draw.uniform(c.aod_min_deg, std::min(c.aod_max_deg, 360.0));
                s.zod_deg = draw.uniform(c.zod_min_deg, c.zod_max_deg);
            }

            // deactivate a uniform-random number of slots, keeping at least q_min active
            const int n_off = draw.uniform_int(0, c.q_max - c.q_min);
            std::vector<int> order(static_cast<std::size_t>(c.q_max));
            std::iota(order.begin(), order.end(), 0);
            for (int k = 0; k < n_off; ++k)
            {
                const int j = draw.uniform_int(k, c.q_max - 1);
                std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(j)]);
                ind.slots[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])].active = false;
            }

            if (repair(ind, cfg, targets, sc, draw))
            {
                pop.push_back(std::move(ind));
                done = true;
            }
            else
            {
                const ValidationReport rep = validate_placement(to_placement(ind), c);
                if (!rep.violations.empty())
                    last_violation = rep.violations.front();
            }
        }
        if (!done)
            throw std::runtime_error("init_population: constraint set appears infeasible (last violation: " +
                                     last_violation + ")");
    }
    return pop;
}

std::vector<int> select_parents(const std::vector<double>& fitnesses, RandomStream& stream)
{
    const std::size_t n = fitnesses.size();
    if (n < 2)
        throw std::invalid_argument("select_parents: need at least two individuals");

    double max_finite = -std::numeric_limits<double>::infinity();
    for (double f : fitnesses)
        if (std::isfinite(f))
            max_finite = std::max(max_finite, f);

    std::vector<double> weight(n, 0.0);
    double total = 0.0;
    if (std::isfinite(max_finite))
    {
        for (std::size_t i = 0; i < n; ++i)
        {
            if (std::isfinite(fitnesses[i]))
                weight[i] = max_finite - fitnesses[i];
            total += weight[i];
        }
    }

    std::vector<int> picks(n);
    if (total <= 0.0)
    {
        // all fitnesses equal (or all invalid): uniform selection
        for (std::size_t i = 0; i < n; ++i)
            picks[i] = stream.uniform_int(0, static_cast<int>(n) - 1);
        return picks;
    }

    for (std::size_t i = 0; i < n; ++i)
    {
        const double r = stream.uniform() * total;
        double acc = 0.0;
        int chosen = static_cast<int>(n) - 1;
        for (std::size_t j = 0; j < n; ++j)
        {
            acc += weight[j];
            if (r < acc)
            {
                chosen = static_cast<int>(j);
                break;
            }
        }
        picks[i] = chosen;
    }
    return picks;
}

std::pair<Individual, Individual> crossover(const Individual& a, const Individual& b,
                                            const GaConfig& cfg, const MeasuredTargets& targets,
                                            const ScenarioConfig& sc, RandomStream& stream)
{
    if (a.slots.size() != b.slots.size())
        throw std::invalid_argument("crossover: genome lengths differ");
    Individual c1 = a;
    Individual c2 = b;
    if (stream.uniform() < cfg.crossover_rate)
    {
        const int genes = 3 * static_cast<int>(a.slots.size());
        const int cut = stream.uniform_int(1, genes - 1);
        for (int g = cut; g < genes; ++g)
        {
            GeneSlot& s1 = c1.slots[static_cast<std::size_t>(g / 3)];
            GeneSlot& s2 = c2.slots[static_cast<std::size_t>(g / 3)];
            switch (g % 3)
            {
            case 0: // the activity marker travels with the distance gene
                std::swap(s1.active, s2.active);
                std::swap(s1.d_m, s2.d_m);
                break;
            case 1:
                std::swap(s1.aod_deg, s2.aod_deg);
                break;
            default:
                std::swap(s1.zod_deg, s2.zod_deg);
                break;
            }
        }
        if (!repair(c1, cfg, targets, sc, stream))
            c1 = a;
        if (!repair(c2, cfg, targets, sc, stream))
            c2 = b;
    }
    return {c1, c2};
}

Individual mutate(const Individual& ind, const GaConfig& cfg, const MeasuredTargets& targets,
                  const ScenarioConfig& sc, RandomStream& stream)
{
    const ConstraintSet& c = cfg.constraints;
    Individual m = ind;

    for (GeneSlot& s : m.slots)
    {
        if (stream.uniform() < cfg.mutation_rate)
            s.d_m = stream.uniform(c.d_min_m, c.d_max_m);
        if (stream.uniform() < cfg.mutation_rate)
            s.aod_deg = stream.uniform(c.aod_min_deg, std::min(c.aod_max_deg, 360.0));
        if (stream.uniform() < cfg.mutation_rate)
            s.zod_deg = stream.uniform(c.zod_min_deg, c.zod_max_deg);
    }

    int active = m.active_count();
    for (GeneSlot& s : m.slots)
    {
        if (stream.uniform() < cfg.mutation_rate)
        {
            if (s.active && active > c.q_min)
            {
                s.active = false;
                --active;
            }
            else if (!s.active && active < c.q_max)
            {
                s.active = true;
                ++active;
            }
        }
    }

    if (!repair(m, cfg, targets, sc, stream))
        return ind;
    return m;
}

OptimizationResult run_ga(const GaConfig& cfg, const MeasuredTargets& targets,
                          const ScenarioConfig& sc)
{
    if (cfg.max_iterations < 0)
        throw std::invalid_argument("run_ga: max_iterations must be >= 0");
    if (cfg.population_size < 2)
        throw std::invalid_argument("run_ga: population_size must be >= 2");
    if (cfg.crossover_rate < 0.0 || cfg.crossover_rate > 1.0 || cfg.mutation_rate < 0.0 ||
        cfg.mutation_rate > 1.0)
        throw std::invalid_argument("run_ga: rates must lie in [0, 1]");
    if (cfg.fitness_realizations < 1)
        throw std::invalid_argument("run_ga: fitness_realizations must be >= 1");

    const RandomStream root(cfg.root_seed);
    const int L = cfg.population_size;

    std::vector<Individual> pop = init_population(cfg, targets, sc, root.fork(kStreamInit));
    std::vector<double> fits(static_cast<std::size_t>(L));
    std::vector<ScoredIndividual> archive;
    archive.reserve(static_cast<std::size_t>(L) * static_cast<std::size_t>(cfg.max_iterations + 1));

    const RandomStream eval0 = root.fork(kStreamEval).fork(0);
    for (int l = 0; l < L; ++l)
    {
        fits[static_cast<std::size_t>(l)] = fitness(pop[static_cast<std::size_t>(l)], targets, sc, cfg, eval0);
        archive.push_back({pop[static_cast<std::size_t>(l)], fits[static_cast<std::size_t>(l)]});
    }

    std::size_t best_idx = static_cast<std::size_t>(
        std::min_element(fits.begin(), fits.end()) - fits.begin());
    Individual best_ind = pop[best_idx];
    double best_fit = fits[best_idx];

    OptimizationResult result;
    result.fitness_trace.push_back(best_fit);

    for (int e = 1; e <= cfg.max_iterations; ++e)
    {
        const RandomStream ops = root.fork(kStreamOps).fork(static_cast<std::uint64_t>(e));
        RandomStream sel_stream = ops.fork(0);
        RandomStream cross_stream = ops.fork(1);
        RandomStream mut_stream = ops.fork(2);

        const std::vector<int> parents = select_parents(fits, sel_stream);
        std::vector<Individual> offspring;
        offspring.reserve(static_cast<std::size_t>(L));
        for (int i = 0; i < L; i += 2)
        {
            const Individual& pa = pop[static_cast<std::size_t>(parents[static_cast<std::size_t>(i)])];
            const Individual& pb =
                pop[static_cast<std::size_t>(parents[static_cast<std::size_t>((i + 1) % L)])];
            auto [c1, c2] = crossover(pa, pb, cfg, targets, sc, cross_stream);
            offspring.push_back(std::move(c1));
            if (static_cast<int>(offspring.size()) < L)
                offspring.push_back(std::move(c2));
        }
        for (Individual& child : offspring)
            child = mutate(child, cfg, targets, sc, mut_stream);

        // elitism: the best individual survives unchanged and keeps its recorded fitness
        offspring[0] = best_ind;
        pop = std::move(offspring);

        const RandomStream eval_stream = root.fork(kStreamEval).fork(static_cast<std::uint64_t>(e));
        fits[0] = best_fit;
        for (int l = 1; l < L; ++l)
        {
            fits[static_cast<std::size_t>(l)] =
                fitness(pop[static_cast<std::size_t>(l)], targets, sc, cfg, eval_stream);
            archive.push_back({pop[static_cast<std::size_t>(l)], fits[static_cast<std::size_t>(l)]});
        }

        const double prev = result.fitness_trace.back();
        best_idx = static_cast<std::size_t>(std::min_element(fits.begin(), fits.end()) - fits.begin());
        if (fits[best_idx] < best_fit)
        {
            best_fit = fits[best_idx];
            best_ind = pop[best_idx];
        }
        result.fitness_trace.push_back(best_fit);
        result.generations_run = e;

        if (prev - best_fit <= cfg.convergence_eps)
            break;
    }

    std::stable_sort(archive.begin(), archive.end(),
                     [](const ScoredIndividual& x, const ScoredIndividual& y) {
                         return x.fitness < y.fitness;
                     });
    const std::size_t keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(cfg.top_fraction * static_cast<double>(archive.size()))));
    archive.resize(std::min(keep, archive.size()));

    result.best_placement = to_placement(best_ind);
    result.best_fitness = best_fit;
    result.top_individuals = std::move(archive);
    return result;
}

} // namespace mrpchan
