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

#include "mrpchan/monostatic.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mrpchan
{

double aggregate_pl(const std::vector<double>& per_rp_pl_db)
{
    if (per_rp_pl_db.empty())
        throw std::invalid_argument("aggregate_pl: empty input");
    double lin = 0.0;
    for (double pl : per_rp_pl_db)
        lin += std::pow(10.0, pl / 10.0);
    return 10.0 * std::log10(lin);
}

double aggregate_sf(const std::vector<double>& per_rp_sf_linear)
{
    if (per_rp_sf_linear.empty())
        throw std::invalid_argument("aggregate_sf: empty input");
    double lin = 0.0;
    for (double sf : per_rp_sf_linear)
    {
        if (!(sf > 0.0))
            throw std::domain_error("aggregate_sf: nonpositive linear factor");
        lin += sf;
    }
    return 10.0 * std::log10(lin);
}

double equal_distance_for_pl(int q, double pl_target_db, double fc_ghz)
{
    if (q < 1)
        throw std::invalid_argument("equal_distance_for_pl: q must be >= 1");
    if (fc_ghz <= 0.0)
        throw std::domain_error("equal_distance_for_pl: fc_ghz must be positive");
    // PL(d) + 10 log10(q) = target  =>  38.3 log10(d) = -17.3 - 24.9 log10(fc) - target + 10 log10(q)
    const double num = -17.3 - 24.9 * std::log10(fc_ghz) - pl_target_db + 10.0 * std::log10(q);
    const double d = std::pow(10.0, num / 38.3);
    if (!std::isfinite(d) || d <= 0.0)
        throw std::domain_error("equal_distance_for_pl: target not attainable");
    return d;
}

std::vector<PathRecord> path_weights(const ChannelRealization& ch, bool include_sf)
{
    double pl_lin_total = 0.0;
    double sf_lin_total = 0.0;
    for (const SubChannelRealization& sub : ch.subchannels)
    {
        pl_lin_total += std::pow(10.0, sub.pl_db / 10.0);
        sf_lin_total += sub.lsp.sf_linear;
    }

    std::vector<PathRecord> out;
    std::size_t count = 0;
    for (const SubChannelRealization& sub : ch.subchannels)
        count += sub.paths.size();
    out.reserve(count);

    for (const SubChannelRealization& sub : ch.subchannels)
    {
        const double pl_ratio = std::pow(10.0, sub.pl_db / 10.0) / pl_lin_total;
        const double sf_ratio = include_sf ? sub.lsp.sf_linear / sf_lin_total : 1.0;
        for (PathRecord path : sub.paths)
        {
            path.power_lin *= pl_ratio * sf_ratio;
            out.push_back(path);
        }
    }
    return out;
}

ChannelRealization compose_from_subchannels(const RpPlacement& placement,
                                            std::vector<SubChannelRealization> subs,
                                            bool include_sf)
{
    if (subs.empty())
        throw std::invalid_argument("compose_from_subchannels: no sub-channels");

    ChannelRealization ch;
    ch.placement = placement;
    ch.subchannels = std::move(subs);

    std::vector<double> pls;
    std::vector<double> sfs;
    pls.reserve(ch.subchannels.size());
    sfs.reserve(ch.subchannels.size());
    for (const SubChannelRealization& sub : ch.subchannels)
    {
        pls.push_back(sub.pl_db);
        sfs.push_back(sub.lsp.sf_linear);
    }
    ch.pl_total_db = aggregate_pl(pls);
    ch.sf_total_db = aggregate_sf(sfs);
    ch.weighted_paths = path_weights(ch, include_sf);
    return ch;
}

ChannelRealization compose_channel(const RpPlacement& placement, const ScenarioConfig& sc,
                                   const RandomStream& stream, bool include_sf)
{
    const std::size_t q = placement.size();
    if (q == 0 || placement.aod_deg.size() != q || placement.zod_deg.size() != q)
        throw std::invalid_argument("compose_channel: malformed placement");

    std::vector<SubChannelRealization> subs;
    subs.reserve(q);
    for (std::size_t i = 0; i < q; ++i)
    {
        const PlacementEntry entry{placement.distances_m[i], placement.aod_deg[i],
                                   placement.zod_deg[i]};
        subs.push_back(assemble_subchannel(static_cast<int>(i), entry, sc, stream.fork(i)));
    }
    return compose_from_subchannels(placement, std::move(subs), include_sf);
}

} // namespace mrpchan
