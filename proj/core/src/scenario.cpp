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

#include "mrpchan/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace mrpchan
{

std::vector<double> ScenarioConfig::default_ray_offsets()
{
    return {0.0447, -0.0447, 0.1413, -0.1413, 0.2492, -0.2492, 0.3715, -0.3715,
            0.5129, -0.5129, 0.6797, -0.6797, 0.8844, -0.8844, 1.1481, -1.1481,
            1.5195, -1.5195, 2.1551, -2.1551};
}

ScenarioConfig inh_nlos(double fc_ghz)
{
    ScenarioConfig sc;
    sc.fc_ghz = fc_ghz;
    sc.lg_ds_mu = -0.28 * std::log10(1.0 + fc_ghz) - 7.173;
    sc.lg_ds_sigma = 0.10 * std::log10(1.0 + fc_ghz) + 0.055;
    return sc;
}

void validate_scenario(const ScenarioConfig& sc)
{
    if (sc.fc_ghz <= 0.0)
        throw std::invalid_argument("scenario: fc_ghz must be positive");
    if (sc.n_clusters < 1 || sc.m_rays < 1)
        throw std::invalid_argument("scenario: need at least one cluster and one ray");
    if (!(sc.r_tau > 1.0))
        throw std::invalid_argument("scenario: r_tau must exceed 1");
    if (sc.lg_ds_sigma < 0.0 || sc.lg_asd_sigma < 0.0 || sc.lg_zsd_sigma < 0.0 ||
        sc.cluster_shadow_db < 0.0 || sc.sf_sigma_db < 0.0 || sc.xpr_sigma_db < 0.0)
        throw std::invalid_argument("scenario: negative spread parameter");
    if (sc.ray_offset_table.size() != static_cast<std::size_t>(sc.m_rays))
        throw std::invalid_argument("scenario: ray offset table length must equal m_rays");
    if (sc.c_asd_deg < 0.0 || sc.c_zsd_deg < 0.0)
        throw std::invalid_argument("scenario: negative intra-cluster spread");
}

} // namespace mrpchan
