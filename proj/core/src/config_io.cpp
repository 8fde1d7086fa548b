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

#include "mrpchan/config_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "mrpchan/expr.hpp"

namespace mrpchan
{

namespace
{

using nlohmann::json;

[[noreturn]] void bad(const std::string& what)
{
    throw std::runtime_error("config: " + what);
}

// Numeric field that may be written as a number or as an expression string.
double num_field(const json& obj, const std::string& key, double fallback,
                 const std::map<std::string, double>& vars)
{
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (v.is_number())
        return v.get<double>();
    if (v.is_string())
    {
        try
        {
            return eval_expression(v.get<std::string>(), vars);
        }
        catch (const std::exception& e)
        {
            bad("field '" + key + "': " + e.what());
        }
    }
    bad("field '" + key + "' must be a number or an expression string");
}

int int_field(const json& obj, const std::string& key, int fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        bad("field '" + key + "' must be an integer");
    return v.get<int>();
}

bool bool_field(const json& obj, const std::string& key, bool fallback)
{
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean())
        bad("field '" + key + "' must be a boolean");
    return v.get<bool>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& section)
{
    for (const auto& item : obj.items())
        if (allowed.find(item.key()) == allowed.end())
            bad("unknown key '" + item.key() + "' in section '" + section + "'");
}

void parse_scenario(const json& obj, ScenarioConfig& sc)
{
    static const std::set<std::string> keys = {
        "fc_ghz",       "n_clusters",    "m_rays",       "r_tau",
        "lg_ds_mu",     "lg_ds_sigma",   "lg_asd_mu",    "lg_asd_sigma",
        "lg_zsd_mu",    "lg_zsd_sigma",  "sf_sigma_db",  "cluster_shadow_db",
        "c_asd_deg",    "c_zsd_deg",     "xpr_mu_db",    "xpr_sigma_db",
        "zenith_enabled", "excess_delay", "ray_offset_table"};
    reject_unknown(obj, keys, "scenario");

    // the carrier goes first so that the remaining fields can reference it as "fc"
    const double fc = num_field(obj, "fc_ghz", sc.fc_ghz, {});
    if (!(fc > 0.0))
        bad("scenario.fc_ghz must be positive");
    ScenarioConfig base = inh_nlos(fc);
    base.zenith_enabled = sc.zenith_enabled;
    base.excess_delay = sc.excess_delay;
    sc = base;
    const std::map<std::string, double> vars = {{"fc", fc}};

    sc.n_clusters = int_field(obj, "n_clusters", sc.n_clusters);
    sc.m_rays = int_field(obj, "m_rays", sc.m_rays);
    sc.r_tau = num_field(obj, "r_tau", sc.r_tau, vars);
    sc.lg_ds_mu = num_field(obj, "lg_ds_mu", sc.lg_ds_mu, vars);
    sc.lg_ds_sigma = num_field(obj, "lg_ds_sigma", sc.lg_ds_sigma, vars);
    sc.lg_asd_mu = num_field(obj, "lg_asd_mu", sc.lg_asd_mu, vars);
    sc.lg_asd_sigma = num_field(obj, "lg_asd_sigma", sc.lg_asd_sigma, vars);
    sc.lg_zsd_mu = num_field(obj, "lg_zsd_mu", sc.lg_zsd_mu, vars);
    sc.lg_zsd_sigma = num_field(obj, "lg_zsd_sigma", sc.lg_zsd_sigma, vars);
    sc.sf_sigma_db = num_field(obj, "sf_sigma_db", sc.sf_sigma_db, vars);
    sc.cluster_shadow_db = num_field(obj, "cluster_shadow_db", sc.cluster_shadow_db, vars);
    sc.c_asd_deg = num_field(obj, "c_asd_deg", sc.c_asd_deg, vars);
    sc.c_zsd_deg = num_field(obj, "c_zsd_deg", sc.c_zsd_deg, vars);
    sc.xpr_mu_db = num_field(obj, "xpr_mu_db", sc.xpr_mu_db, vars);
    sc.xpr_sigma_db = num_field(obj, "xpr_sigma_db", sc.xpr_sigma_db, vars);
    sc.zenith_enabled = bool_field(obj, "zenith_enabled", sc.zenith_enabled);

    if (obj.contains("excess_delay"))
    {
        const json& ed = obj.at("excess_delay");
        if (!ed.is_object())
            bad("scenario.excess_delay must be an object");
        reject_unknown(ed, {"enabled", "lg_mu", "lg_sigma"}, "scenario.excess_delay");
        sc.excess_delay.enabled = bool_field(ed, "enabled", sc.excess_delay.enabled);
        sc.excess_delay.lg_mu = num_field(ed, "lg_mu", sc.excess_delay.lg_mu, vars);
        sc.excess_delay.lg_sigma = num_field(ed, "lg_sigma", sc.excess_delay.lg_sigma, vars);
    }

    if (obj.contains("ray_offset_table"))
    {
        const json& t = obj.at("ray_offset_table");
        if (!t.is_array())
            bad("scenario.ray_offset_table must be an array");
        sc.ray_offset_table.clear();
        for (const json& v : t)
        {
            if (!v.is_number())
                bad("scenario.ray_offset_table entries must be numbers");
            sc.ray_offset_table.push_back(v.get<double>());
        }
    }
    else if (sc.m_rays != static_cast<int>(sc.ray_offset_table.size()))
    {
        bad("scenario.m_rays differs from the default ray offset table length; "
            "provide scenario.ray_offset_table");
    }

    validate_scenario(sc);
}

void parse_constraints(const json& obj, ConstraintSet& c)
{
    static const std::set<std::string> keys = {"q_min",       "q_max",       "d_min_m",
                                               "d_max_m",     "aod_min_deg", "aod_max_deg",
                                               "zod_min_deg", "zod_max_deg", "delta_d_m",
                                               "delta_phi_deg", "delta_theta_deg"};
    reject_unknown(obj, keys, "constraints");
    c.q_min = int_field(obj, "q_min", c.q_min);
    c.q_max = int_field(obj, "q_max", c.q_max);
    c.d_min_m = num_field(obj, "d_min_m", c.d_min_m, {});
    c.d_max_m = num_field(obj, "d_max_m", c.d_max_m, {});
    c.aod_min_deg = num_field(obj, "aod_min_deg", c.aod_min_deg, {});
    c.aod_max_deg = num_field(obj, "aod_max_deg", c.aod_max_deg, {});
    c.zod_min_deg = num_field(obj, "zod_min_deg", c.zod_min_deg, {});
    c.zod_max_deg = num_field(obj, "zod_max_deg", c.zod_max_deg, {});
    c.delta_d_m = num_field(obj, "delta_d_m", c.delta_d_m, {});
    c.delta_phi_deg = num_field(obj, "delta_phi_deg", c.delta_phi_deg, {});
    c.delta_theta_deg = num_field(obj, "delta_theta_deg", c.delta_theta_deg, {});

    if (c.q_min < 1 || c.q_max < c.q_min)
        bad("constraints: require 1 <= q_min <= q_max");
    if (!(c.d_min_m > 0.0) || c.d_max_m < c.d_min_m)
        bad("constraints: require 0 < d_min_m <= d_max_m");
    if (c.aod_max_deg < c.aod_min_deg || c.zod_max_deg < c.zod_min_deg)
        bad("constraints: angle bounds out of order");
    if (c.delta_d_m < 0.0 || c.delta_phi_deg < 0.0 || c.delta_theta_deg < 0.0)
        bad("constraints: separations must be nonnegative");
}

void parse_ga(const json& obj, GaConfig& g)
{
    static const std::set<std::string> keys = {
        "max_iterations", "convergence_eps", "population_size", "crossover_rate",
        "mutation_rate",  "w_pl",            "w_ds",            "w_as_az",
        "w_as_zen",       "fitness_realizations", "top_fraction", "root_seed"};
    reject_unknown(obj, keys, "ga");
    g.max_iterations = int_field(obj, "max_iterations", g.max_iterations);
    g.convergence_eps = num_field(obj, "convergence_eps", g.convergence_eps, {});
    g.population_size = int_field(obj, "population_size", g.population_size);
    g.crossover_rate = num_field(obj, "crossover_rate", g.crossover_rate, {});
    g.mutation_rate = num_field(obj, "mutation_rate", g.mutation_rate, {});
    g.w_ds = num_field(obj, "w_ds", g.w_ds, {});
    g.w_as_az = num_field(obj, "w_as_az", g.w_as_az, {});
    g.w_as_zen = num_field(obj, "w_as_zen", g.w_as_zen, {});
    g.fitness_realizations = int_field(obj, "fitness_realizations", g.fitness_realizations);
    g.top_fraction = num_field(obj, "top_fraction", g.top_fraction, {});

    if (obj.contains("w_pl"))
    {
        const json& v = obj.at("w_pl");
        if (v.is_string())
        {
            if (v.get<std::string>() != "hard")
                bad("ga.w_pl must be the string \"hard\" or a number");
            g.w_pl_hard = true;
            g.w_pl = 0.0;
        }
        else if (v.is_number())
        {
            g.w_pl_hard = false;
            g.w_pl = v.get<double>();
        }
        else
        {
            bad("ga.w_pl must be the string \"hard\" or a number");
        }
    }

    if (obj.contains("root_seed"))
    {
        const json& v = obj.at("root_seed");
        if (!v.is_number_unsigned())
            bad("ga.root_seed must be a nonnegative integer");
        g.root_seed = v.get<std::uint64_t>();
    }

    if (g.top_fraction <= 0.0 || g.top_fraction > 1.0)
        bad("ga.top_fraction must lie in (0, 1]");
}

void parse_targets(const json& obj, MeasuredTargets& t)
{
    static const std::set<std::string> keys = {"pl_db", "ds_ns", "as_az_deg", "as_zen_deg"};
    reject_unknown(obj, keys, "targets");
    t.pl_db = num_field(obj, "pl_db", t.pl_db, {});
    t.ds_s = num_field(obj, "ds_ns", t.ds_s * 1e9, {}) * 1e-9;
    t.as_az_deg = num_field(obj, "as_az_deg", t.as_az_deg, {});
    if (obj.contains("as_zen_deg"))
        t.as_zen_deg = num_field(obj, "as_zen_deg", 0.0, {});
}

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_cell(const std::string& cell, const std::string& path, std::size_t line,
                  const char* column)
{
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end != nullptr && *end == ' ')
        ++end;
    if (end == begin || (end != nullptr && *end != '\0'))
        throw std::runtime_error(path + ":" + std::to_string(line) + ": bad value '" + cell +
                                 "' in column " + column);
    if (!std::isfinite(v))
        throw std::runtime_error(path + ":" + std::to_string(line) + ": non-finite value in column " +
                                 std::string(column));
    return v;
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line)
    {
        if (ch == ',')
        {
            cells.push_back(cur);
            cur.clear();
        }
        else if (ch != '\r')
        {
            cur += ch;
        }
    }
    cells.push_back(cur);
    for (std::string& c : cells)
    {
        const std::size_t a = c.find_first_not_of(" \t");
        const std::size_t b = c.find_last_not_of(" \t");
        c = (a == std::string::npos) ? std::string() : c.substr(a, b - a + 1);
    }
    return cells;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

SimulationConfig default_config()
{
    SimulationConfig cfg;
    cfg.scenario = inh_nlos();
    return cfg;
}

SimulationConfig parse_config(const std::string& json_text)
{
    json root;
    try
    {
        root = json::parse(json_text);
    }
    catch (const json::parse_error& e)
    {
        bad(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        bad("top level must be an object");
    reject_unknown(root, {"scenario", "constraints", "ga", "targets"}, "(top level)");

    SimulationConfig cfg = default_config();
    if (root.contains("scenario"))
        parse_scenario(root.at("scenario"), cfg.scenario);
    if (root.contains("constraints"))
        parse_constraints(root.at("constraints"), cfg.constraints);
    if (root.contains("ga"))
        parse_ga(root.at("ga"), cfg.ga);
    if (root.contains("targets"))
        parse_targets(root.at("targets"), cfg.targets);
    cfg.ga.constraints = cfg.constraints;
    return cfg;
}

SimulationConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try
    {
        return parse_config(buf.str());
    }
    catch (const std::exception& e)
    {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string dump_config(const SimulationConfig& cfg)
{
    const ScenarioConfig& s = cfg.scenario;
    const ConstraintSet& c = cfg.constraints;
    const GaConfig& g = cfg.ga;
    const MeasuredTargets& t = cfg.targets;

    json root;
    json& sc = root["scenario"];
    sc["fc_ghz"] = s.fc_ghz;
    sc["n_clusters"] = s.n_clusters;
    sc["m_rays"] = s.m_rays;
    sc["r_tau"] = s.r_tau;
    sc["lg_ds_mu"] = s.lg_ds_mu;
    sc["lg_ds_sigma"] = s.lg_ds_sigma;
    sc["lg_asd_mu"] = s.lg_asd_mu;
    sc["lg_asd_sigma"] = s.lg_asd_sigma;
    sc["lg_zsd_mu"] = s.lg_zsd_mu;
    sc["lg_zsd_sigma"] = s.lg_zsd_sigma;
    sc["sf_sigma_db"] = s.sf_sigma_db;
    sc["cluster_shadow_db"] = s.cluster_shadow_db;
    sc["c_asd_deg"] = s.c_asd_deg;
    sc["c_zsd_deg"] = s.c_zsd_deg;
    sc["xpr_mu_db"] = s.xpr_mu_db;
    sc["xpr_sigma_db"] = s.xpr_sigma_db;
    sc["zenith_enabled"] = s.zenith_enabled;
    sc["excess_delay"] = {{"enabled", s.excess_delay.enabled},
                          {"lg_mu", s.excess_delay.lg_mu},
                          {"lg_sigma", s.excess_delay.lg_sigma}};
    sc["ray_offset_table"] = s.ray_offset_table;

    json& cc = root["constraints"];
    cc["q_min"] = c.q_min;
    cc["q_max"] = c.q_max;
    cc["d_min_m"] = c.d_min_m;
    cc["d_max_m"] = c.d_max_m;
    cc["aod_min_deg"] = c.aod_min_deg;
    cc["aod_max_deg"] = c.aod_max_deg;
    cc["zod_min_deg"] = c.zod_min_deg;
    cc["zod_max_deg"] = c.zod_max_deg;
    cc["delta_d_m"] = c.delta_d_m;
    cc["delta_phi_deg"] = c.delta_phi_deg;
    cc["delta_theta_deg"] = c.delta_theta_deg;

    json& gg = root["ga"];
    gg["max_iterations"] = g.max_iterations;
    gg["convergence_eps"] = g.convergence_eps;
    gg["population_size"] = g.population_size;
    gg["crossover_rate"] = g.crossover_rate;
    gg["mutation_rate"] = g.mutation_rate;
    if (g.w_pl_hard)
        gg["w_pl"] = "hard";
    else
        gg["w_pl"] = g.w_pl;
    gg["w_ds"] = g.w_ds;
    gg["w_as_az"] = g.w_as_az;
    gg["w_as_zen"] = g.w_as_zen;
    gg["fitness_realizations"] = g.fitness_realizations;
    gg["top_fraction"] = g.top_fraction;
    gg["root_seed"] = g.root_seed;

    json& tt = root["targets"];
    tt["pl_db"] = t.pl_db;
    tt["ds_ns"] = t.ds_s * 1e9;
    tt["as_az_deg"] = t.as_az_deg;
    if (t.as_zen_deg.has_value())
        tt["as_zen_deg"] = *t.as_zen_deg;

    return root.dump(2) + "\n";
}

PathList read_pathlist_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open path list '" + path + "'");

    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line))
        throw std::runtime_error(path + ": empty file");
    ++line_no;
    {
        std::string header;
        for (char ch : line)
            if (ch != ' ' && ch != '\t' && ch != '\r')
                header += ch;
        if (header != "delay_ns,aod_deg,zod_deg,power_db")
            throw std::runtime_error(path + ":1: expected header 'delay_ns,aod_deg,zod_deg,power_db'");
    }

    PathList paths;
    while (std::getline(in, line))
    {
        ++line_no;
        bool blank = true;
        for (char ch : line)
            blank = blank && (ch == ' ' || ch == '\t' || ch == '\r');
        if (blank)
            continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != 4)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected 4 columns, got " +
                                     std::to_string(cells.size()));
        PathEntry p;
        p.delay_s = parse_cell(cells[0], path, line_no, "delay_ns") * 1e-9;
        if (p.delay_s < 0.0)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": negative delay");
        p.aod_deg = parse_cell(cells[1], path, line_no, "aod_deg");
        p.zod_deg = cells[2].empty() ? 90.0 : parse_cell(cells[2], path, line_no, "zod_deg");
        p.power_lin = std::pow(10.0, parse_cell(cells[3], path, line_no, "power_db") / 10.0);
        paths.push_back(p);
    }
    if (paths.empty())
        throw std::runtime_error(path + ": no data rows");
    return paths;
}

void write_pathlist_csv(const std::string& path, const PathList& paths)
{
    std::ofstream out = open_out(path);
    out << "delay_ns,aod_deg,zod_deg,power_db\n";
    for (const PathEntry& p : paths)
    {
        out << fmt_double(p.delay_s * 1e9) << ',' << fmt_double(p.aod_deg) << ','
            << fmt_double(p.zod_deg) << ',' << fmt_double(10.0 * std::log10(p.power_lin)) << '\n';
    }
}

void write_weighted_paths_csv(const std::string& path, const std::vector<PathRecord>& paths)
{
    std::ofstream out = open_out(path);
    out << "rp,cluster,ray,abs_delay_ns,aod_deg,zod_deg,power_lin\n";
    for (const PathRecord& p : paths)
    {
        out << p.rp_index << ',' << p.cluster_index << ',' << p.ray_index << ','
            << fmt_double(p.abs_delay_s * 1e9) << ',' << fmt_double(p.aod_deg) << ','
            << fmt_double(p.zod_deg) << ',' << fmt_double(p.power_lin) << '\n';
    }
}

void write_padp_csv(const std::string& path, const PadpGrid& grid)
{
    std::ofstream out = open_out(path);
    out << "angle_deg,delay_ns,power_db\n";
    for (std::size_t a = 0; a < grid.power_lin.size(); ++a)
    {
        const double angle = grid.angle_start_deg + static_cast<double>(a) * grid.angle_step_deg;
        for (std::size_t d = 0; d < grid.power_lin[a].size(); ++d)
        {
            const double delay_ns =
                (grid.delay_start_s + static_cast<double>(d) * grid.delay_step_s) * 1e9;
            const double p = std::max(grid.power_lin[a][d], 1e-30);
            out << fmt_double(angle) << ',' << fmt_double(delay_ns) << ','
                << fmt_double(10.0 * std::log10(p)) << '\n';
        }
    }
}

} // namespace mrpchan
