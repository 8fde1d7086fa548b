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

#include "mrpchan/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mrpchan
{

double wrap360(double deg)
{
    double w = std::fmod(deg, 360.0);
    if (w < 0.0)
        w += 360.0;
    if (w >= 360.0) // fmod rounding can land exactly on 360
        w = 0.0;
    return w;
}

double wrap180(double deg)
{
    return wrap360(deg + 180.0) - 180.0;
}

double circular_separation_deg(double a_deg, double b_deg)
{
    double d = std::fabs(wrap360(a_deg) - wrap360(b_deg));
    return std::min(d, 360.0 - d);
}

ValidationReport validate_placement(const RpPlacement& p, const ConstraintSet& c)
{
    const std::size_t q = p.distances_m.size();
    if (q == 0)
        throw std::invalid_argument("validate_placement: empty placement");
    if (p.aod_deg.size() != q || p.zod_deg.size() != q)
        throw std::invalid_argument("validate_placement: field lengths differ");

    ValidationReport rep;
    auto flag = [&rep](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };

    if (static_cast<int>(q) < c.q_min || static_cast<int>(q) > c.q_max)
        flag("rp-count: Q=" + std::to_string(q) + " outside [" + std::to_string(c.q_min) + ", " +
             std::to_string(c.q_max) + "]");

    for (std::size_t i = 0; i < q; ++i)
    {
        if (!(p.distances_m[i] >= c.d_min_m && p.distances_m[i] <= c.d_max_m))
            flag("distance-bounds[" + std::to_string(i) + "]: " + std::to_string(p.distances_m[i]) + " m");
        if (!(p.aod_deg[i] >= c.aod_min_deg && p.aod_deg[i] <= c.aod_max_deg))
            flag("aod-bounds[" + std::to_string(i) + "]: " + std::to_string(p.aod_deg[i]) + " deg");
        if (!(p.zod_deg[i] >= c.zod_min_deg && p.zod_deg[i] <= c.zod_max_deg))
            flag("zod-bounds[" + std::to_string(i) + "]: " + std::to_string(p.zod_deg[i]) + " deg");
    }

    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j)
        {
            const std::string ij = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
            if (std::fabs(p.distances_m[i] - p.distances_m[j]) < c.delta_d_m)
                flag("distance-separation" + ij);
            if (circular_separation_deg(p.aod_deg[i], p.aod_deg[j]) < c.delta_phi_deg)
                flag("aod-separation" + ij);
            if (std::fabs(p.zod_deg[i] - p.zod_deg[j]) < c.delta_theta_deg)
                flag("zod-separation" + ij);
        }

    return rep;
}

std::vector<Point3D> rp_coordinates(const Point3D& tx, const RpPlacement& p)
{
    std::vector<Point3D> out;
    out.reserve(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
    {
        const double d = p.distances_m[i];
        const double az = p.aod_deg[i] * kDeg2Rad;
        const double ze = p.zod_deg[i] * kDeg2Rad;
        out.push_back({tx.x + d * std::sin(ze) * std::cos(az),
                       tx.y + d * std::sin(ze) * std::sin(az),
                       tx.z + d * std::cos(ze)});
    }
    return out;
}

RpPlacement placement_from_coordinates(const Point3D& tx, const std::vector<Point3D>& rps)
{
    RpPlacement p;
    p.distances_m.reserve(rps.size());
    p.aod_deg.reserve(rps.size());
    p.zod_deg.reserve(rps.size());
    for (const Point3D& r : rps)
    {
        const double dx = r.x - tx.x;
        const double dy = r.y - tx.y;
        const double dz = r.z - tx.z;
        const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
        p.distances_m.push_back(d);
        if (d > 0.0)
        {
            p.aod_deg.push_back(wrap360(std::atan2(dy, dx) * kRad2Deg));
            p.zod_deg.push_back(std::acos(std::clamp(dz / d, -1.0, 1.0)) * kRad2Deg);
        }
        else
        {
            p.aod_deg.push_back(0.0);
            p.zod_deg.push_back(0.0);
        }
    }
    return p;
}

std::vector<double> delays_from_distances(const RpPlacement& p)
{
    std::vector<double> tau;
    tau.reserve(p.size());
    for (double d : p.distances_m)
    {
        if (d < 0.0)
            throw std::invalid_argument("delays_from_distances: negative distance");
        tau.push_back(d / kSpeedOfLight);
    }
    return tau;
}

} // namespace mrpchan
