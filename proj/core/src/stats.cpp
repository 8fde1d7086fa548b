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

#include "mrpchan/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mrpchan/geometry.hpp"

namespace mrpchan
{

namespace
{

// Wrap into [-180, 180); valid only for |x| < 540, which holds for differences of
// already-wrapped angles. Cheaper than fmod in the rotation scan below.
inline double wrap180_narrow(double x)
{
    if (x >= 180.0)
        x -= 360.0;
    else if (x < -180.0)
        x += 360.0;
    return x;
}

double total_power(const PathList& paths)
{
    double total = 0.0;
    for (const PathEntry& p : paths)
        total += p.power_lin;
    if (!(total > 0.0))
        throw std::domain_error("path list has no positive total power");
    return total;
}

} // namespace

PadpGrid padp(const std::vector<std::vector<std::complex<double>>>& cir_rows,
              double angle_start_deg, double angle_step_deg, double delay_start_s,
              double delay_step_s)
{
    if (cir_rows.empty())
        throw std::invalid_argument("padp: empty input");
    const std::size_t cols = cir_rows.front().size();
    PadpGrid grid;
    grid.angle_start_deg = angle_start_deg;
    grid.angle_step_deg = angle_step_deg;
    grid.delay_start_s = delay_start_s;
    grid.delay_step_s = delay_step_s;
    grid.power_lin.reserve(cir_rows.size());
    for (const auto& row : cir_rows)
    {
        if (row.size() != cols)
            throw std::invalid_argument("padp: ragged CIR rows");
        std::vector<double> p(cols);
        for (std::size_t i = 0; i < cols; ++i)
            p[i] = std::norm(row[i]);
        grid.power_lin.push_back(std::move(p));
    }
    return grid;
}

double estimate_pl(const PathList& paths)
{
    if (paths.empty())
        throw std::invalid_argument("estimate_pl: empty path list");
    return 10.0 * std::log10(total_power(paths));
}

double rms_delay_spread(const PathList& paths)
{
    if (paths.empty())
        throw std::invalid_argument("rms_delay_spread: empty path list");
    const double total = total_power(paths);

    // work relative to the first delay so a constant shift cancels structurally
    const double d0 = paths[0].delay_s;
    double mean = 0.0;
    for (const PathEntry& p : paths)
        mean += p.power_lin * (p.delay_s - d0);
    mean /= total;

    double var = 0.0;
    for (const PathEntry& p : paths)
    {
        const double dev = (p.delay_s - d0) - mean;
        var += p.power_lin * dev * dev;
    }
    return std::sqrt(var / total);
}

double circular_angle_spread(const PathList& paths, AngleAxis axis)
{
    if (paths.empty())
        throw std::invalid_argument("circular_angle_spread: empty path list");
    const double total = total_power(paths);

    auto angle_of = [axis](const PathEntry& p) {
        return axis == AngleAxis::azimuth ? p.aod_deg : p.zod_deg;
    };

    // Deltas relative to the first path's angle. Anchoring the 1-degree reference grid
    // here makes the minimum invariant under arbitrary global rotations, not just
    // whole-degree ones.
    const double a0 = angle_of(paths[0]);
    std::vector<double> delta(paths.size());
    std::vector<double> weight(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i)
    {
        delta[i] = wrap180(angle_of(paths[i]) - a0);
        weight[i] = paths[i].power_lin;
    }

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> dev(paths.size());
    for (int k = 0; k < 360; ++k)
    {
        double mean = 0.0;
        for (std::size_t i = 0; i < paths.size(); ++i)
        {
            dev[i] = wrap180_narrow(delta[i] - static_cast<double>(k));
            mean += weight[i] * dev[i];
        }
        mean /= total;

        double var = 0.0;
        for (std::size_t i = 0; i < paths.size(); ++i)
        {
            const double w = wrap180_narrow(dev[i] - mean);
            var += weight[i] * w * w;
        }
        best = std::min(best, var);
    }
    return std::sqrt(best / total);
}

double normalized_error(double v0, double v)
{
    if (!(v0 > 0.0))
        throw std::domain_error("normalized_error: reference must be positive");
    return std::fabs(v0 - v) / v0 * 100.0;
}

NormalFit fit_normal(std::vector<double> samples)
{
    const std::size_t n = samples.size();
    if (n < 8)
        throw std::invalid_argument("fit_normal: need at least 8 samples");

    NormalFit fit;
    for (double x : samples)
        fit.mu += x;
    fit.mu /= static_cast<double>(n);
    double ss = 0.0;
    for (double x : samples)
        ss += (x - fit.mu) * (x - fit.mu);
    fit.sigma = std::sqrt(ss / static_cast<double>(n - 1));

    if (fit.sigma == 0.0)
    {
        fit.ks = 0.0; // degenerate: the point mass fits itself
        return fit;
    }

    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double z = (samples[i] - fit.mu) / fit.sigma;
        const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
        const double hi = static_cast<double>(i + 1) / static_cast<double>(n) - cdf;
        const double lo = cdf - static_cast<double>(i) / static_cast<double>(n);
        d = std::max({d, hi, lo});
    }
    fit.ks = d;
    return fit;
}

PathList synth_measurement(int count, RandomStream& stream, double pl_target_db)
{
    if (count < 1)
        throw std::invalid_argument("synth_measurement: count must be >= 1");

    PathList out;
    out.reserve(static_cast<std::size_t>(count));
    double total = 0.0;
    for (int i = 0; i < count; ++i)
    {
        double delay_s;
        do
        {
            delay_s = stream.normal(90.20e-9, 36.39e-9);
        } while (delay_s < 0.0); // truncate at zero by redraw
        const double aod = stream.uniform(0.0, 360.0);
        const double power = std::pow(10.0, -stream.uniform(0.0, 30.0) / 10.0);
        out.push_back({delay_s, aod, 90.0, power});
        total += power;
    }

    const double scale = std::pow(10.0, pl_target_db / 10.0) / total;
    for (PathEntry& p : out)
        p.power_lin *= scale;
    return out;
}

PathList to_pathlist(const std::vector<PathRecord>& paths)
{
    PathList out;
    out.reserve(paths.size());
    for (const PathRecord& p : paths)
        out.push_back({p.abs_delay_s, p.aod_deg, p.zod_deg, p.power_lin});
    return out;
}

ChannelStats stats_of(const ChannelRealization& ch)
{
    const PathList paths = to_pathlist(ch.weighted_paths);
    ChannelStats st;
    st.pl_db = ch.pl_total_db;
    st.ds_s = rms_delay_spread(paths);
    st.as_az_deg = circular_angle_spread(paths, AngleAxis::azimuth);
    // a constant zenith column means zenith generation was off; report nothing then
    bool zen_varies = false;
    for (const PathEntry& p : paths)
        zen_varies = zen_varies || p.zod_deg != paths.front().zod_deg;
    if (zen_varies)
        st.as_zen_deg = circular_angle_spread(paths, AngleAxis::zenith);
    return st;
}

} // namespace mrpchan
