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

#include <array>
#include <complex>
#include <vector>

#include "mrpchan/random.hpp"
#include "mrpchan/scenario.hpp"
#include "mrpchan/types.hpp"

namespace mrpchan
{

// One set of large-scale parameter draws for a single Tx-RP link.
struct LspDraw
{
    double ds_s;      // rms delay spread [s]
    double asd_deg;   // azimuth spread of departure [deg], clipped at 104
    double zsd_deg;   // zenith spread of departure [deg], clipped at 104
    double sf_linear; // shadow fading as linear power factor
};

// Fully resolved propagation path (one ray of one cluster).
struct PathRecord
{
    double abs_delay_s = 0.0;             // absolute delay [s]
    double aod_deg = 0.0;                 // azimuth of departure [deg], 0 - 360
    double zod_deg = 90.0;                // zenith of departure [deg], 0 - 180
    double aoa_deg = 0.0;                 // azimuth of arrival; equals aod for the monostatic echo
    double zoa_deg = 90.0;                // zenith of arrival; equals zod
    double power_lin = 0.0;               // normalized power weight
    double xpr_lin = 1.0;                 // cross-polarization power ratio kappa (linear)
    std::array<double, 4> phases_rad{};   // initial phases: theta-theta, theta-phi, phi-theta, phi-phi
    double doppler_hz = 0.0;              // per-path Doppler shift [Hz]
    int rp_index = 0;
    int cluster_index = 0;
    int ray_index = 0;
};

// One stochastic Tx-RP sub-channel realization: N*M paths with unit total power,
// plus the large-scale draws and the distance-based path loss of the link.
struct SubChannelRealization
{
    int rp_index = 0;
    LspDraw lsp{};
    double pl_db = 0.0;         // pathloss_inh_nlos(fc, d) [dB], negative gain
    double excess_delay_s = 0.0;// lognormal delay offset [s], 0 when disabled
    std::vector<PathRecord> paths;
};

// Placement entry for a single RP.
struct PlacementEntry
{
    double d_m;
    double aod_deg;
    double zod_deg;
};

// InH NLoS distance-dependent gain [dB]: -17.3 - 24.9 log10(fc/GHz) - 38.3 log10(d/m).
// Negative-gain convention; throws std::domain_error for d <= 0.
double pathloss_inh_nlos(double fc_ghz, double d3d_m);

// Draw DS/ASD/ZSD lognormals (spreads clipped at 104 deg) and the shadow-fading factor.
// Consumes four normals in fixed order: ds, asd, zsd, sf.
LspDraw draw_lsps(const ScenarioConfig& sc, RandomStream& stream);

// Exponentially distributed cluster delays, scaled by r_tau * ds, minimum-subtracted
// and sorted ascending; first element is exactly 0.
std::vector<double> gen_cluster_delays(double ds_s, const ScenarioConfig& sc, RandomStream& stream);

// Exponential-decay cluster powers with per-cluster lognormal shadowing, normalized to unit sum.
std::vector<double> gen_cluster_powers(const std::vector<double>& delays_s, double ds_s,
                                       const ScenarioConfig& sc, RandomStream& stream);

enum class AngleKind
{
    azimuth,
    zenith
};

// Cluster angles from the power-to-angle mapping: inverse-Gaussian for azimuth,
// inverse-Laplacian for zenith, with random per-cluster sign and normal perturbation,
// recentered on center_deg. Azimuth output is wrapped to [0, 360); zenith output is
// reflected into [0, 180].
std::vector<double> gen_cluster_angles(double spread_deg, const std::vector<double>& powers,
                                       double center_deg, AngleKind kind, RandomStream& stream);

// Generate one complete sub-channel for RP q. All randomness comes from fixed-purpose
// substreams of `stream`, so toggling optional features never shifts unrelated draws.
SubChannelRealization assemble_subchannel(int rp_index, const PlacementEntry& entry,
                                          const ScenarioConfig& sc, const RandomStream& stream);

// Antenna geometry for CIR rendering: element offsets [m] from the array phase center
// and constant (direction-independent) field patterns per polarization.
struct ArrayGeometry
{
    std::vector<Point3D> tx_elements_m{{0.0, 0.0, 0.0}};
    std::vector<Point3D> rx_elements_m{{0.0, 0.0, 0.0}};
    double tx_f_theta = 1.0;
    double tx_f_phi = 0.0;
    double rx_f_theta = 1.0;
    double rx_f_phi = 0.0;
};

// One complex CIR tap.
struct CirTap
{
    double delay_s;
    std::complex<double> amp;
    int rp_index;
    int cluster_index;
    int ray_index;
};

// Render the complex CIR taps of a set of sub-channels for every (rx element u, tx element s)
// pair at observation time t. Each path contributes
//   amp_scale_q * sqrt(p) * [F_rx^T * polarization(kappa, phases) * F_tx]
//   * exp(j 2 pi r_rx . d_u / lambda) * exp(j 2 pi r_tx . d_s / lambda) * exp(j 2 pi f_d t)
// with r the unit direction of the path's arrival/departure angles. amp_scale holds one
// linear amplitude multiplier per sub-channel (1.0 for the bare sub-channel response).
// Throws std::invalid_argument when amp_scale and subs sizes differ or the geometry is empty.
std::vector<std::vector<std::vector<CirTap>>> render_cir(const std::vector<SubChannelRealization>& subs,
                                                         const std::vector<double>& amp_scale,
                                                         const ArrayGeometry& geom, double fc_ghz,
                                                         double t_s);

} // namespace mrpchan
