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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mrpchan
{

// Cartesian position [m] in the global coordinate system.
struct Point3D
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Free parameters of the composed monostatic channel, one entry per reference point (RP).
// An RP is a virtual receive anchor; the monostatic background channel is modeled as the
// superposition of independent Tx-to-RP sub-channels.
struct RpPlacement
{
    std::vector<double> distances_m; // 3D Tx-RP distance [m], > 0
    std::vector<double> aod_deg;     // azimuth angle of departure [deg], 0 - 360
    std::vector<double> zod_deg;     // zenith angle of departure [deg], 0 - 180

    std::size_t size() const
    {
        return distances_m.size();
    }
};

// Validity box and minimum-separation rules for RP placements.
struct ConstraintSet
{
    int q_min = 1;                 // minimum number of RPs
    int q_max = 5;                 // maximum number of RPs
    double d_min_m = 0.5;          // distance lower bound [m]
    double d_max_m = 100.0;        // distance upper bound [m]
    double aod_min_deg = 0.0;      // azimuth bounds [deg]
    double aod_max_deg = 360.0;
    double zod_min_deg = 90.0;     // zenith bounds [deg]
    double zod_max_deg = 90.0;
    double delta_d_m = 0.0;        // minimum pairwise |d_i - d_j| [m]
    double delta_phi_deg = 20.0;   // minimum pairwise circular azimuth separation [deg]
    double delta_theta_deg = 0.0;  // minimum pairwise zenith separation [deg]
};

// Calibration targets extracted from a measured channel: total path loss and
// power-weighted rms spreads of the effective paths.
struct MeasuredTargets
{
    double pl_db = -80.8125;            // path loss as negative gain [dB]
    double ds_s = 32.92e-9;             // rms delay spread [s]
    double as_az_deg = 89.98;           // azimuth angular spread [deg]
    std::optional<double> as_zen_deg{}; // zenith angular spread [deg], absent if not measured
};

// Result of constraint validation; "violations" lists one human-readable
// identifier per violated rule, with the offending indices.
struct ValidationReport
{
    bool ok = true;
    std::vector<std::string> violations;
};

} // namespace mrpchan
