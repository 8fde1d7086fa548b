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

#include "mrpchan/gbsm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mrpchan/geometry.hpp"

namespace mrpchan
{

namespace
{

// Fixed-purpose substream ids within one sub-channel. Each consumer forks its own
// substream, so optional features (zenith, excess delay) never shift other draws.
enum DrawSite : std::uint64_t
{
    kSiteLsp = 0,
    kSiteDelays = 1,
    kSitePowers = 2,
    kSiteAzimuth = 3,
    kSiteZenith = 4,
    kSiteXpr = 5,
    kSitePhases = 6,
    kSiteExcessDelay = 7,
};

// Azimuth spread scaling factor C_phi for NLoS, TR 38.901 Table 7.5-2.
double cphi_nlos(int n)
{
    switch (n)
    {
    case 2:
        return 0.501;
    case 3:
        return 0.680;
    case 4:
        return 0.779;
    case 5:
        return 0.860;
    case 8:
        return 1.018;
    case 10:
        return 1.090;
    case 11:
        return 1.123;
    case 12:
        return 1.146;
    case 14:
        return 1.190;
    case 15:
        return 1.221;
    case 16:
        return 1.226;
    case 19:
        return 1.273;
    case 20:
        return 1.289;
    default:
        throw std::invalid_argument("no azimuth scaling factor tabulated for N=" + std::to_string(n));
    }
}

// Zenith spread scaling factor C_theta for NLoS, TR 38.901 Table 7.5-4.
double ctheta_nlos(int n)
{
    switch (n)
    {
    case 2:
        return 0.430;
    case 3:
        return 0.594;
    case 4:
        return 0.697;
    case 8:
        return 0.889;
    case 10:
        return 0.957;
    case 11:
        return 1.031;
    case 12:
        return 1.104;
    case 15:
        return 1.1088;
    case 19:
        return 1.184;
    case 20:
        return 1.178;
    default:
        throw std::invalid_argument("no zenith scaling factor tabulated for N=" + std::to_string(n));
    }
}

// Reflect a zenith angle into [0, 180].
double fold_zenith(double deg)
{
    double w = wrap360(deg);
    return w > 180.0 ? 360.0 - w : w;
}

} // namespace

double pathloss_inh_nlos(double fc_ghz, double d3d_m)
{
    if (fc_ghz <= 0.0)
        throw std::domain_error("pathloss_inh_nlos: fc_ghz must be positive");
    if (d3d_m <= 0.0)
        throw std::domain_error("pathloss_inh_nlos: d3d_m must be positive");
    return -17.3 - 24.9 * std::log10(fc_ghz) - 38.3 * std::log10(d3d_m);
}

LspDraw draw_lsps(const ScenarioConfig& sc, RandomStream& stream)
{
    LspDraw lsp;
    lsp.ds_s = std::pow(10.0, stream.normal(sc.lg_ds_mu, sc.lg_ds_sigma));
    lsp.asd_deg = std::min(std::pow(10.0, stream.normal(sc.lg_asd_mu, sc.lg_asd_sigma)), 104.0);
    lsp.zsd_deg = std::min(std::pow(10.0, stream.normal(sc.lg_zsd_mu, sc.lg_zsd_sigma)), 104.0);
    lsp.sf_linear = std::pow(10.0, stream.normal(0.0, sc.sf_sigma_db) / 10.0);
    return lsp;
}

std::vector<double> gen_cluster_delays(double ds_s, const ScenarioConfig& sc, RandomStream& stream)
{
    if (!(ds_s > 0.0))
        throw std::domain_error("gen_cluster_delays: ds_s must be positive");
    std::vector<double> tau(static_cast<std::size_t>(sc.n_clusters));
    for (double& t : tau)
        t = -sc.r_tau * ds_s * std::log1p(-stream.uniform()); // -r_tau * ds * ln(U), U in (0,1]
    const double lo = *std::min_element(tau.begin(), tau.end());
    for (double& t : tau)
        t -= lo;
    std::sort(tau.begin(), tau.end());
    tau[0] = 0.0; // exact zero after min subtraction
    return tau;
}

std::vector<double> gen_cluster_powers(const std::vector<double>& delays_s, double ds_s,
                                       const ScenarioConfig& sc, RandomStream& stream)
{
    if (!(ds_s > 0.0))
        throw std::domain_error("gen_cluster_powers: ds_s must be positive");
    std::vector<double> p(delays_s.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n)
    {
        const double shadow_db = stream.normal(0.0, sc.cluster_shadow_db);
        p[n] = std::exp(-delays_s[n] * (sc.r_tau - 1.0) / (sc.r_tau * ds_s)) *
               std::pow(10.0, -shadow_db / 10.0);
        sum += p[n];
    }
    for (double& v : p)
        v /= sum;
    return p;
}

std::vector<double> gen_cluster_angles(double spread_deg, const std::vector<double>& powers,
                                       double center_deg, AngleKind kind, RandomStream& stream)
{
    if (!(spread_deg > 0.0))
        throw std::domain_error("gen_cluster_angles: spread_deg must be positive");
    const int n = static_cast<int>(powers.size());
    const double pmax = *std::max_element(powers.begin(), powers.end());

    std::vector<double> out(powers.size());
    if (kind == AngleKind::azimuth)
    {
        const double c = cphi_nlos(n);
        for (std::size_t i = 0; i < powers.size(); ++i)
        {
            // inverse-Gaussian power-to-angle mapping
            const double prime = 2.0 * (spread_deg / 1.4) * std::sqrt(-std::log(powers[i] / pmax)) / c;
            const double sign = stream.sign();
            const double jitter = stream.normal(0.0, spread_deg / 7.0);
            out[i] = wrap360(sign * prime + jitter + center_deg);
        }
    }
    else
    {
        const double c = ctheta_nlos(n);
        for (std::size_t i = 0; i < powers.size(); ++i)
        {
            // inverse-Laplacian power-to-angle mapping
            const double prime = -spread_deg * std::log(powers[i] / pmax) / c;
            const double sign = stream.sign();
            const double jitter = stream.normal(0.0, spread_deg / 7.0);
            out[i] = fold_zenith(sign * prime + jitter + center_deg);
        }
    }
    return out;
}

SubChannelRealization assemble_subchannel(int rp_index, const PlacementEntry& entry,
                                          const ScenarioConfig& sc, const RandomStream& stream)
{
    validate_scenario(sc);
    if (!(entry.d_m > 0.0))
        throw std::domain_error("assemble_subchannel: RP distance must be positive");

    SubChannelRealization sub;
    sub.rp_index = rp_index;
    sub.pl_db = pathloss_inh_nlos(sc.fc_ghz, entry.d_m);

    RandomStream lsp_stream = stream.fork(kSiteLsp);
    sub.lsp = draw_lsps(sc, lsp_stream);

    RandomStream delay_stream = stream.fork(kSiteDelays);
    const std::vector<double> tau = gen_cluster_delays(sub.lsp.ds_s, sc, delay_stream);

    RandomStream power_stream = stream.fork(kSitePowers);
    const std::vector<double> powers = gen_cluster_powers(tau, sub.lsp.ds_s, sc, power_stream);

    RandomStream az_stream = stream.fork(kSiteAzimuth);
    const std::vector<double> az =
        gen_cluster_angles(sub.lsp.asd_deg, powers, entry.aod_deg, AngleKind::azimuth, az_stream);

    std::vector<double> ze;
    if (sc.zenith_enabled)
    {
        RandomStream ze_stream = stream.fork(kSiteZenith);
        ze = gen_cluster_angles(sub.lsp.zsd_deg, powers, entry.zod_deg, AngleKind::zenith, ze_stream);
    }

    sub.excess_delay_s = 0.0;
    if (sc.excess_delay.enabled)
    {
        RandomStream ed_stream = stream.fork(kSiteExcessDelay);
        sub.excess_delay_s =
            std::pow(10.0, ed_stream.normal(sc.excess_delay.lg_mu, sc.excess_delay.lg_sigma));
    }

    RandomStream xpr_stream = stream.fork(kSiteXpr);
    RandomStream phase_stream = stream.fork(kSitePhases);

    const double los_delay = entry.d_m / kSpeedOfLight;
    const double ray_power = 1.0 / static_cast<double>(sc.m_rays);

    sub.paths.reserve(static_cast<std::size_t>(sc.n_clusters) * sc.m_rays);
    for (int n = 0; n < sc.n_clusters; ++n)
    {
        for (int m = 0; m < sc.m_rays; ++m)
        {
            PathRecord path;
            path.rp_index = rp_index;
            path.cluster_index = n;
            path.ray_index = m;
            path.abs_delay_s = tau[n] + los_delay + sub.excess_delay_s;
            path.aod_deg = wrap360(az[n] + sc.c_asd_deg * sc.ray_offset_table[m]);
            path.zod_deg = sc.zenith_enabled
                               ? fold_zenith(ze[n] + sc.c_zsd_deg * sc.ray_offset_table[m])
                               : entry.zod_deg;
            path.aoa_deg = path.aod_deg; // monostatic echo: arrival mirrors departure
            path.zoa_deg = path.zod_deg;
            path.power_lin = powers[n] * ray_power;
            path.xpr_lin = std::pow(10.0, xpr_stream.normal(sc.xpr_mu_db, sc.xpr_sigma_db) / 10.0);
            for (double& ph : path.phases_rad)
                ph = phase_stream.uniform(0.0, 2.0 * kPi);
            sub.paths.push_back(path);
        }
    }
    return sub;
}

std::vector<std::vector<std::vector<CirTap>>> render_cir(const std::vector<SubChannelRealization>& subs,
                                                         const std::vector<double>& amp_scale,
                                                         const ArrayGeometry& geom, double fc_ghz,
                                                         double t_s)
{
    if (amp_scale.size() != subs.size())
        throw std::invalid_argument("render_cir: amp_scale size must match sub-channel count");
    if (geom.tx_elements_m.empty() || geom.rx_elements_m.empty())
        throw std::invalid_argument("render_cir: antenna arrays must be non-empty");
    if (fc_ghz <= 0.0)
        throw std::domain_error("render_cir: fc_ghz must be positive");

    const double lambda_m = kSpeedOfLight / (fc_ghz * 1e9);
    const std::size_t n_u = geom.rx_elements_m.size();
    const std::size_t n_s = geom.tx_elements_m.size();

    std::vector<std::vector<std::vector<CirTap>>> taps(n_u,
                                                       std::vector<std::vector<CirTap>>(n_s));

    auto unit_dir = [](double az_deg, double ze_deg) {
        const double az = az_deg * kDeg2Rad;
        const double ze = ze_deg * kDeg2Rad;
        return Point3D{std::sin(ze) * std::cos(az), std::sin(ze) * std::sin(az), std::cos(ze)};
    };

    for (std::size_t q = 0; q < subs.size(); ++q)
    {
        for (const PathRecord& path : subs[q].paths)
        {
            const double inv_sqrt_xpr = 1.0 / std::sqrt(path.xpr_lin);
            const std::complex<double> pol =
                geom.rx_f_theta * geom.tx_f_theta * std::polar(1.0, path.phases_rad[0]) +
                geom.rx_f_theta * geom.tx_f_phi * inv_sqrt_xpr * std::polar(1.0, path.phases_rad[1]) +
                geom.rx_f_phi * geom.tx_f_theta * inv_sqrt_xpr * std::polar(1.0, path.phases_rad[2]) +
                geom.rx_f_phi * geom.tx_f_phi * std::polar(1.0, path.phases_rad[3]);

            const Point3D r_rx = unit_dir(path.aoa_deg, path.zoa_deg);
            const Point3D r_tx = unit_dir(path.aod_deg, path.zod_deg);
            const std::complex<double> doppler =
                std::polar(1.0, 2.0 * kPi * path.doppler_hz * t_s);
            const std::complex<double> base =
                amp_scale[q] * std::sqrt(path.power_lin) * pol * doppler;

            for (std::size_t u = 0; u < n_u; ++u)
            {
                const Point3D& du = geom.rx_elements_m[u];
                const double phase_rx =
                    2.0 * kPi * (r_rx.x * du.x + r_rx.y * du.y + r_rx.z * du.z) / lambda_m;
                for (std::size_t s = 0; s < n_s; ++s)
                {
                    const Point3D& ds = geom.tx_elements_m[s];
                    const double phase_tx =
                        2.0 * kPi * (r_tx.x * ds.x + r_tx.y * ds.y + r_tx.z * ds.z) / lambda_m;
                    taps[u][s].push_back({path.abs_delay_s,
                                          base * std::polar(1.0, phase_rx + phase_tx),
                                          path.rp_index, path.cluster_index, path.ray_index});
                }
            }
        }
    }
    return taps;
}

} // namespace mrpchan
