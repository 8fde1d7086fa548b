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

#include <complex>
#include <optional>
#include <vector>

#include "mrpchan/gbsm.hpp"
#include "mrpchan/monostatic.hpp"
#include "mrpchan/random.hpp"

namespace mrpchan
{

// One effective path of a measured or modeled channel.
struct PathEntry
{
    double delay_s = 0.0;    // >= 0
    double aod_deg = 0.0;
    double zod_deg = 90.0;
    double power_lin = 0.0;  // > 0, linear power
};

using PathList = std::vector<PathEntry>;

// Summary statistics of one channel: total path loss and rms spreads.
struct ChannelStats
{
    double pl_db = 0.0;
    double ds_s = 0.0;
    double as_az_deg = 0.0;
    std::optional<double> as_zen_deg{};
};

// Power-angular-delay profile on a uniform angle x delay grid.
struct PadpGrid
{
    double angle_start_deg = 0.0;
    double angle_step_deg = 1.0;
    double delay_start_s = 0.0;
    double delay_step_s = 1e-9;
    std::vector<std::vector<double>> power_lin; // [angle][delay]
};

// Moment fit of a normal distribution plus its Kolmogorov-Smirnov distance.
struct NormalFit
{
    double mu = 0.0;
    double sigma = 0.0;
    double ks = 0.0;
};

// Squared magnitude of gridded CIR samples, one row per rotation angle.
// Throws std::invalid_argument on ragged rows.
PadpGrid padp(const std::vector<std::vector<std::complex<double>>>& cir_rows,
              double angle_start_deg, double angle_step_deg, double delay_start_s,
              double delay_step_s);

// Path-loss estimate: 10 log10 of the summed linear powers. Throws on empty input.
double estimate_pl(const PathList& paths);

// Power-weighted rms deviation of path delays about their power-weighted mean [s].
double rms_delay_spread(const PathList& paths);

enum class AngleAxis
{
    azimuth,
    zenith
};

// Circular rms angular spread [deg]: minimum over reference rotations (1 degree grid,
// anchored at the first path's angle so the result is invariant under arbitrary global
// rotations) of the power-weighted rms of wrapped deviations about the wrapped mean.
// Upper bound 360/sqrt(12) = 103.92 deg for a uniform circle.
double circular_angle_spread(const PathList& paths, AngleAxis axis);

// |v0 - v| / v0 as a percentage; v0 must be positive.
double normalized_error(double v0, double v);

// Moment-based normal fit (mean, sample std) with the exact KS distance between the
// empirical CDF and the fitted normal CDF. Requires at least 8 samples.
NormalFit fit_normal(std::vector<double> samples);

// Synthetic stand-in for a measured indoor path list: delays normal(90.20 ns, 36.39 ns)
// truncated at zero by redraw, azimuths uniform on [0, 360), powers log-uniform over a
// 30 dB dynamic range and rescaled so estimate_pl equals pl_target_db exactly.
PathList synth_measurement(int count, RandomStream& stream, double pl_target_db = -80.8125);

// View a weighted path set as a PathList for the estimators above.
PathList to_pathlist(const std::vector<PathRecord>& paths);

// PL/DS/AS summary of a composed channel; PL is the aggregate path loss, spreads are
// computed on the globally weighted paths. The zenith spread is reported only when the
// realization actually varies in zenith (generation enabled).
ChannelStats stats_of(const ChannelRealization& ch);

} // namespace mrpchan
