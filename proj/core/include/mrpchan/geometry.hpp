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

#include "mrpchan/types.hpp"

namespace mrpchan
{

inline constexpr double kSpeedOfLight = 299792458.0; // [m/s]
inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kDeg2Rad = kPi / 180.0;
inline constexpr double kRad2Deg = 180.0 / kPi;

// Wrap an angle into [0, 360).
double wrap360(double deg);

// Wrap an angle into [-180, 180).
double wrap180(double deg);

// Circular distance between two azimuths: min(|a-b|, 360-|a-b|), in [0, 180].
double circular_separation_deg(double a_deg, double b_deg);

// Check an RP placement against a constraint set. Throws std::invalid_argument on
// empty or length-mismatched placements; rule violations are reported, not thrown.
// The verdict is insensitive to the order of RP entries.
ValidationReport validate_placement(const RpPlacement& p, const ConstraintSet& c);

// Map (distance, aod, zod) triples to global Cartesian RP positions:
//   x = x_tx + d sin(zod) cos(aod),  y = y_tx + d sin(zod) sin(aod),  z = z_tx + d cos(zod)
std::vector<Point3D> rp_coordinates(const Point3D& tx, const RpPlacement& p);

// Inverse of rp_coordinates: recover (distance, aod, zod) from positions.
// Zero-distance points get aod = zod = 0.
RpPlacement placement_from_coordinates(const Point3D& tx, const std::vector<Point3D>& rps);

// Line-of-sight propagation delays tau_q = d_q / c [s].
std::vector<double> delays_from_distances(const RpPlacement& p);

} // namespace mrpchan
