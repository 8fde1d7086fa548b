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

#include <vector>

#include "mrpchan/gbsm.hpp"
#include "mrpchan/random.hpp"
#include "mrpchan/scenario.hpp"
#include "mrpchan/types.hpp"

namespace mrpchan
{

// Composed monostatic background channel: Q sub-channels, the aggregated large-scale
// terms, and the globally weighted path set used for statistics.
struct ChannelRealization
{
    RpPlacement placement;
    std::vector<SubChannelRealization> subchannels;
    double pl_total_db = 0.0; // 10 log10 of the summed linear per-RP path gains
    double sf_total_db = 0.0; // 10 log10 of the summed linear per-RP shadow factors
    std::vector<PathRecord> weighted_paths; // power_lin carries the global weight
};

// Total path loss of the composition: 10 log10(sum_q 10^(PL_q / 10)).
// Throws std::invalid_argument on empty input.
double aggregate_pl(const std::vector<double>& per_rp_pl_db);

// Total shadow fading of the composition: 10 log10 of the linear sum.
// Throws std::domain_error on nonpositive entries.
double aggregate_sf(const std::vector<double>& per_rp_sf_linear);

// The unique common distance d such that q RPs at distance d aggregate to pl_target_db.
// Closed form from the 38.3 dB/decade distance slope of the InH NLoS gain law.
double equal_distance_for_pl(int q, double pl_target_db, double fc_ghz);

// Global per-path weights: p = (P_n / M) * (PL_q / PL_total) * (SF_q / SF_total), ratios in
// the linear domain. With include_sf = false the shadow-fading ratio is omitted and the
// weights sum to exactly 1.
std::vector<PathRecord> path_weights(const ChannelRealization& ch, bool include_sf);

// Aggregate large-scale terms and weight paths for an already generated sub-channel set.
ChannelRealization compose_from_subchannels(const RpPlacement& placement,
                                            std::vector<SubChannelRealization> subs,
                                            bool include_sf = false);

// Generate Q sub-channels (sub-channel q draws from stream.fork(q)) and compose them.
ChannelRealization compose_channel(const RpPlacement& placement, const ScenarioConfig& sc,
                                   const RandomStream& stream, bool include_sf = false);

} // namespace mrpchan
