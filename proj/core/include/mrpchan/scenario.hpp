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

namespace mrpchan
{

// Optional lognormal excess-delay offset added to every path of a sub-channel.
// Disabled by default; the validation statistics assume pure propagation delay.
struct ExcessDelayConfig
{
    bool enabled = false;
    double lg_mu = -7.5;   // log10 of seconds
    double lg_sigma = 0.4; // log10 of seconds
};

// Scenario parameter table for stochastic sub-channel generation. Defaults are the
// Indoor Hotspot (InH) office NLoS values of 3GPP TR 38.901 evaluated at 28 GHz;
// alternate scenarios load from configuration data without code changes.
struct ScenarioConfig
{
    double fc_ghz = 28.0;          // carrier frequency [GHz]
    int n_clusters = 19;           // N
    int m_rays = 20;               // M rays per cluster
    double r_tau = 3.0;            // delay distribution scaling factor
    double cluster_shadow_db = 3.0;// per-cluster shadowing std [dB]
    double c_asd_deg = 5.0;        // intra-cluster azimuth spread [deg]
    double c_zsd_deg = 4.508491629815299; // intra-cluster zenith spread, 3/8 * 10^lg_zsd_mu [deg]
    double lg_ds_mu = -7.582471439411708;   // log10(DS / 1 s), -0.28 log10(1+fc) - 7.173
    double lg_ds_sigma = 0.20123979978989562; // 0.10 log10(1+fc) + 0.055
    double lg_asd_mu = 1.62;       // log10(ASD / 1 deg)
    double lg_asd_sigma = 0.25;
    double lg_zsd_mu = 1.08;       // log10(ZSD / 1 deg)
    double lg_zsd_sigma = 0.36;
    double sf_sigma_db = 8.03;     // shadow-fading std [dB]
    double xpr_mu_db = 10.0;       // cross-polarization ratio mean [dB]
    double xpr_sigma_db = 4.0;     // cross-polarization ratio std [dB]
    bool zenith_enabled = false;   // false: all zenith angles pinned to the RP zod
    std::vector<double> ray_offset_table = default_ray_offsets(); // M fixed offsets, dimensionless
    ExcessDelayConfig excess_delay{};

    // Fixed 20-ray offset angles of TR 38.901 Table 7.5-3.
    static std::vector<double> default_ray_offsets();
};

// InH office NLoS table evaluated at fc [GHz]: applies the frequency-dependent
// delay-spread distribution parameters; everything else is frequency-flat.
ScenarioConfig inh_nlos(double fc_ghz = 28.0);

// Throws std::invalid_argument when structural invariants are broken
// (N, M >= 1, r_tau > 1, sigmas >= 0, offset table length == m_rays).
void validate_scenario(const ScenarioConfig& sc);

} // namespace mrpchan
