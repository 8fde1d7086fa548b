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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mrpchan/config_io.hpp"
#include "mrpchan/ga_mrpe.hpp"
#include "mrpchan/geometry.hpp"
#include "mrpchan/monostatic.hpp"
#include "mrpchan/random.hpp"
#include "mrpchan/stats.hpp"
#include "mrpchan/version.hpp"

namespace
{

using nlohmann::json;
namespace fs = std::filesystem;
using namespace mrpchan;

struct Options
{
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    bool seed_given = false;
    int realizations = 1;
    bool include_sf = false;
    bool write_paths = false;
    std::vector<std::string> rp_specs;
    int average_q = 0;
    std::string input_path;
    std::string what; // reproduce target
    int count = 302;
    double pl_db = -80.8125;
    bool pl_given = false;
};

SimulationConfig load_or_default(const std::string& path)
{
    if (path.empty())
        return default_config();
    return load_config(path);
}

void write_text(const fs::path& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
}

json placement_json(const RpPlacement& p)
{
    return json{{"distances_m", p.distances_m}, {"aod_deg", p.aod_deg}, {"zod_deg", p.zod_deg}};
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const SimulationConfig& cfg, std::uint64_t seed,
                    const std::vector<std::string>& artifacts)
{
    json m;
    m["command"] = command;
    m["version"] = MRPCHAN_VERSION_STRING;
    m["seed"] = seed;
    m["config"] = json::parse(dump_config(cfg));
    m["artifacts"] = artifacts;
    write_text(out_dir / "manifest.json", m.dump(2) + "\n");
}

// --rp "d,aod[,zod]" -> placement row
RpPlacement parse_rp_specs(const std::vector<std::string>& specs)
{
    RpPlacement p;
    for (const std::string& spec : specs)
    {
        std::vector<double> vals;
        std::string cur;
        for (char ch : spec + ",")
        {
            if (ch == ',')
            {
                if (cur.empty())
                    throw std::runtime_error("--rp '" + spec + "': empty field");
                vals.push_back(std::stod(cur));
                cur.clear();
            }
            else
            {
                cur += ch;
            }
        }
        if (vals.size() < 2 || vals.size() > 3)
            throw std::runtime_error("--rp '" + spec + "': expected d,aod[,zod]");
        p.distances_m.push_back(vals[0]);
        p.aod_deg.push_back(vals[1]);
        p.zod_deg.push_back(vals.size() == 3 ? vals[2] : 90.0);
    }
    return p;
}

// Q equidistant RPs matching the target path loss, azimuths evenly spaced
RpPlacement average_placement(int q, double pl_target_db, double fc_ghz)
{
    RpPlacement p;
    const double d = equal_distance_for_pl(q, pl_target_db, fc_ghz);
    for (int i = 0; i < q; ++i)
    {
        p.distances_m.push_back(d);
        p.aod_deg.push_back(360.0 * static_cast<double>(i) / static_cast<double>(q));
        p.zod_deg.push_back(90.0);
    }
    return p;
}

int cmd_simulate(const Options& opt)
{
    const SimulationConfig cfg = load_or_default(opt.config_path);

    RpPlacement placement;
    if (!opt.rp_specs.empty())
        placement = parse_rp_specs(opt.rp_specs);
    else if (opt.average_q > 0)
        placement = average_placement(opt.average_q, cfg.targets.pl_db, cfg.scenario.fc_ghz);
    else
        throw std::runtime_error("simulate: specify --rp (repeatable) or --average-q");

    const ValidationReport rep = validate_placement(placement, cfg.constraints);
    if (!rep.ok)
    {
        std::cerr << "placement violates constraints:\n";
        for (const std::string& v : rep.violations)
            std::cerr << "  " << v << "\n";
        return 2;
    }

    fs::create_directories(opt.out_dir);
    const fs::path out_dir(opt.out_dir);
    std::vector<std::string> artifacts;

    const RandomStream root(opt.seed);
    json per_real = json::array();
    std::string ds_samples = "log10_ds_s\n";
    std::string as_samples = "log10_as_deg\n";
    double ds_acc = 0.0;
    double as_acc = 0.0;
    double pl_db = 0.0;

    for (int r = 0; r < opt.realizations; ++r)
    {
        const ChannelRealization ch =
            compose_channel(placement, cfg.scenario, root.fork(static_cast<std::uint64_t>(r)),
                            opt.include_sf);
        const ChannelStats st = stats_of(ch);
        pl_db = st.pl_db;
        ds_acc += st.ds_s;
        as_acc += st.as_az_deg;
        json row{{"realization", r},
                 {"pl_db", st.pl_db},
                 {"ds_ns", st.ds_s * 1e9},
                 {"as_az_deg", st.as_az_deg}};
        if (st.as_zen_deg.has_value())
            row["as_zen_deg"] = *st.as_zen_deg;
        per_real.push_back(row);
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g\n", std::log10(st.ds_s));
        ds_samples += buf;
        std::snprintf(buf, sizeof(buf), "%.17g\n", std::log10(st.as_az_deg));
        as_samples += buf;

        if (opt.write_paths)
        {
            char name[48];
            std::snprintf(name, sizeof(name), "realization_%03d.csv", r);
            write_weighted_paths_csv((out_dir / name).string(), ch.weighted_paths);
            artifacts.push_back(name);
        }
    }

    const double inv = 1.0 / static_cast<double>(opt.realizations);
    json stats;
    stats["placement"] = placement_json(placement);
    stats["include_sf"] = opt.include_sf;
    stats["realizations"] = opt.realizations;
    stats["per_realization"] = per_real;
    stats["mean"] = {{"pl_db", pl_db}, {"ds_ns", ds_acc * inv * 1e9}, {"as_az_deg", as_acc * inv}};
    write_text(out_dir / "stats.json", stats.dump(2) + "\n");
    write_text(out_dir / "ds_log10.csv", ds_samples);
    write_text(out_dir / "as_log10.csv", as_samples);
    artifacts.insert(artifacts.begin(), {"stats.json", "ds_log10.csv", "as_log10.csv"});

    write_manifest(out_dir, "simulate", cfg, opt.seed, artifacts);
    std::cout << stats["mean"].dump(2) << "\n";
    return 0;
}

int cmd_optimize(const Options& opt)
{
    SimulationConfig cfg = load_or_default(opt.config_path);
    if (opt.seed_given)
        cfg.ga.root_seed = opt.seed;

    fs::create_directories(opt.out_dir);
    const fs::path out_dir(opt.out_dir);

    const OptimizationResult res = run_ga(cfg.ga, cfg.targets, cfg.scenario);

    // modal active-RP count among the archived top individuals
    std::map<int, int> q_votes;
    for (const ScoredIndividual& si : res.top_individuals)
        ++q_votes[si.ind.active_count()];
    int modal_q = static_cast<int>(res.best_placement.size());
    int best_votes = -1;
    for (const auto& [q, votes] : q_votes)
        if (votes > best_votes)
        {
            best_votes = votes;
            modal_q = q;
        }

    json result;
    result["best_placement"] = placement_json(res.best_placement);
    result["best_fitness"] = res.best_fitness;
    result["generations_run"] = res.generations_run;
    result["q_best"] = res.best_placement.size();
    result["q_modal_top"] = modal_q;
    result["top_archived"] = res.top_individuals.size();
    write_text(out_dir / "result.json", result.dump(2) + "\n");

    std::string trace = "generation,best_fitness\n";
    for (std::size_t g = 0; g < res.fitness_trace.size(); ++g)
    {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", g, res.fitness_trace[g]);
        trace += buf;
    }
    write_text(out_dir / "fitness_trace.csv", trace);

    std::string top = "rank,fitness,slot,distance_m,aod_deg,zod_deg\n";
    for (std::size_t rank = 0; rank < res.top_individuals.size(); ++rank)
    {
        const ScoredIndividual& si = res.top_individuals[rank];
        for (std::size_t s = 0; s < si.ind.slots.size(); ++s)
        {
            const GeneSlot& slot = si.ind.slots[s];
            if (!slot.active)
                continue;
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%zu,%.17g,%zu,%.17g,%.17g,%.17g\n", rank, si.fitness,
                          s, slot.d_m, slot.aod_deg, slot.zod_deg);
            top += buf;
        }
    }
    write_text(out_dir / "top_individuals.csv", top);

    write_manifest(out_dir, "optimize", cfg, cfg.ga.root_seed,
                   {"result.json", "fitness_trace.csv", "top_individuals.csv"});
    std::cout << result.dump(2) << "\n";
    return 0;
}

int cmd_stats(const Options& opt)
{
    const PathList paths = read_pathlist_csv(opt.input_path);
    json out;
    out["paths"] = paths.size();
    out["pl_db"] = estimate_pl(paths);
    out["ds_ns"] = rms_delay_spread(paths) * 1e9;
    out["as_az_deg"] = circular_angle_spread(paths, AngleAxis::azimuth);
    out["as_zen_deg"] = circular_angle_spread(paths, AngleAxis::zenith);
    const std::string text = out.dump(2) + "\n";
    if (!opt.out_dir.empty() && opt.out_dir != ".")
    {
        fs::create_directories(opt.out_dir);
        write_text(fs::path(opt.out_dir) / "stats.json", text);
    }
    std::cout << text;
    return 0;
}

int cmd_reproduce(const Options& opt)
{
    const SimulationConfig cfg = load_or_default(opt.config_path);
    const double fc = cfg.scenario.fc_ghz;
    const double pl0 = cfg.targets.pl_db;

    if (opt.what == "distances")
    {
        std::printf("q,d_m\n");
        for (int q = cfg.constraints.q_min; q <= cfg.constraints.q_max; ++q)
            std::printf("%d,%.5f\n", q, equal_distance_for_pl(q, pl0, fc));
        return 0;
    }

    if (opt.what == "table2")
    {
        const RandomStream root(opt.seed);
        std::printf("q,mean_ds_ns,mean_as_deg\n");
        for (int q = cfg.constraints.q_min; q <= cfg.constraints.q_max; ++q)
        {
            const RpPlacement placement = average_placement(q, pl0, fc);
            double ds = 0.0;
            double as = 0.0;
            for (int r = 0; r < opt.realizations; ++r)
            {
                // the same per-realization substream for every q: common random numbers
                const ChannelRealization ch = compose_channel(
                    placement, cfg.scenario, root.fork(static_cast<std::uint64_t>(r)), false);
                const PathList paths = to_pathlist(ch.weighted_paths);
                ds += rms_delay_spread(paths);
                as += circular_angle_spread(paths, AngleAxis::azimuth);
            }
            const double inv = 1.0 / static_cast<double>(opt.realizations);
            std::printf("%d,%.3f,%.3f\n", q, ds * inv * 1e9, as * inv);
        }
        return 0;
    }

    if (opt.what == "fig7")
    {
        // reference deployment reported by the calibration study, the 3-RP average
        // ring, and the single-RP baseline
        RpPlacement optimal;
        optimal.distances_m = {6.19, 6.50, 11.49};
        optimal.aod_deg = {0.0, 130.69, 243.28};
        optimal.zod_deg = {90.0, 90.0, 90.0};
        const std::vector<std::pair<std::string, RpPlacement>> cases = {
            {"optimal", optimal},
            {"3-average", average_placement(3, pl0, fc)},
            {"single", average_placement(1, pl0, fc)}};

        std::string samples = "case,log10_ds_s,log10_as_deg\n";
        std::printf("case,quantity,mu,sigma,ks,ref\n");
        const RandomStream root(opt.seed);
        for (const auto& [name, placement] : cases)
        {
            std::vector<double> lg_ds;
            std::vector<double> lg_as;
            for (int r = 0; r < opt.realizations; ++r)
            {
                const ChannelRealization ch = compose_channel(
                    placement, cfg.scenario, root.fork(static_cast<std::uint64_t>(r)), false);
                const PathList paths = to_pathlist(ch.weighted_paths);
                lg_ds.push_back(std::log10(rms_delay_spread(paths)));
                lg_as.push_back(std::log10(circular_angle_spread(paths, AngleAxis::azimuth)));
                samples += name + ',' + std::to_string(lg_ds.back()) + ',' +
                           std::to_string(lg_as.back()) + '\n';
            }
            const NormalFit fds = fit_normal(lg_ds);
            const NormalFit fas = fit_normal(lg_as);
            std::printf("%s,log10_ds_s,%.6f,%.6f,%.4f,-7.48\n", name.c_str(), fds.mu, fds.sigma,
                        fds.ks);
            std::printf("%s,log10_as_deg,%.6f,%.6f,%.4f,1.95\n", name.c_str(), fas.mu, fas.sigma,
                        fas.ks);
        }
        if (!opt.out_dir.empty() && opt.out_dir != ".")
        {
            fs::create_directories(opt.out_dir);
            write_text(fs::path(opt.out_dir) / "fig7_samples.csv", samples);
        }
        return 0;
    }

    throw std::runtime_error("reproduce: unknown target '" + opt.what +
                             "' (expected distances, table2, or fig7)");
}

int cmd_synth(const Options& opt)
{
    const SimulationConfig cfg = load_or_default(opt.config_path);
    const double pl0 = opt.pl_given ? opt.pl_db : cfg.targets.pl_db;

    fs::create_directories(opt.out_dir);
    const fs::path out_dir(opt.out_dir);

    RandomStream root(opt.seed);
    const PathList paths = synth_measurement(opt.count, root, pl0);
    write_pathlist_csv((out_dir / "synth_paths.csv").string(), paths);

    double mean_delay = 0.0;
    for (const PathEntry& p : paths)
        mean_delay += p.delay_s;
    mean_delay /= static_cast<double>(paths.size());

    json summary;
    summary["count"] = paths.size();
    summary["mean_delay_ns"] = mean_delay * 1e9;
    summary["pl_db"] = estimate_pl(paths);
    summary["ds_ns"] = rms_delay_spread(paths) * 1e9;
    summary["as_az_deg"] = circular_angle_spread(paths, AngleAxis::azimuth);
    write_text(out_dir / "synth_summary.json", summary.dump(2) + "\n");
    write_manifest(out_dir, "synth-measure", cfg, opt.seed,
                   {"synth_paths.csv", "synth_summary.json"});
    std::cout << summary.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mrpchan - monostatic background channel simulator with "
                 "multi-reference-point composition"};
    app.set_version_flag("--version", MRPCHAN_VERSION_STRING);
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&opt](CLI::App* sub, bool with_seed = true) {
        sub->add_option("-c,--config", opt.config_path, "JSON configuration file");
        sub->add_option("-o,--out", opt.out_dir, "output directory");
        if (with_seed)
            sub->add_option("-s,--seed", opt.seed, "root random seed")
                ->each([&opt](const std::string&) { opt.seed_given = true; });
    };

    CLI::App* sim = app.add_subcommand("simulate", "compose channel realizations for a placement");
    add_common(sim);
    sim->add_option("--rp", opt.rp_specs, "reference point as d,aod[,zod] (repeatable)");
    sim->add_option("--average-q", opt.average_q,
                    "equidistant placement with this many reference points");
    sim->add_option("-r,--realizations", opt.realizations, "number of channel realizations")
        ->check(CLI::PositiveNumber);
    sim->add_flag("--include-sf", opt.include_sf, "include shadow fading in the path weights");
    sim->add_flag("--write-paths", opt.write_paths, "write one weighted-path CSV per realization");

    CLI::App* optimize = app.add_subcommand("optimize", "calibrate a placement to measured targets");
    add_common(optimize);

    CLI::App* stats = app.add_subcommand("stats", "large-scale statistics of a path-list CSV");
    add_common(stats, false);
    stats->add_option("-i,--input", opt.input_path, "path-list CSV")->required();

    CLI::App* rep = app.add_subcommand("reproduce", "built-in reference computations");
    add_common(rep);
    rep->add_option("what", opt.what, "one of: distances, table2, fig7")->required();
    rep->add_option("-r,--realizations", opt.realizations, "number of channel realizations")
        ->check(CLI::PositiveNumber);

    CLI::App* synth = app.add_subcommand("synth-measure", "draw a synthetic measured path list");
    add_common(synth);
    synth->add_option("-n,--count", opt.count, "number of paths")->check(CLI::PositiveNumber);
    synth->add_option("--pl-db", opt.pl_db, "target path loss [dB]")
        ->each([&opt](const std::string&) { opt.pl_given = true; });

    // reproduce table2/fig7 want a higher default replication
    rep->preparse_callback([&opt](std::size_t) { opt.realizations = 200; });

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*sim)
            return cmd_simulate(opt);
        if (*optimize)
            return cmd_optimize(opt);
        if (*stats)
            return cmd_stats(opt);
        if (*rep)
            return cmd_reproduce(opt);
        if (*synth)
            return cmd_synth(opt);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
