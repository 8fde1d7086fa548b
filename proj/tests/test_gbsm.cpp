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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "mrpchan/gbsm.hpp"
#include "mrpchan/geometry.hpp"
#include "mrpchan/random.hpp"
#include "mrpchan/scenario.hpp"

using namespace mrpchan;

TEST_CASE("indoor NLoS path loss", "[gbsm][pathloss]")
{
    // -17.3 - 24.9 log10(fc) - 38.3 log10(d), negative-gain convention
    REQUIRE(pathloss_inh_nlos(1.0, 1.0) == Catch::Approx(-17.3).margin(1e-12));
    REQUIRE(pathloss_inh_nlos(28.0, 6.95) == Catch::Approx(-85.58225299622262).margin(1e-9));
    REQUIRE(pathloss_inh_nlos(28.0, 5.22) == Catch::Approx(-80.82101524540789).margin(1e-9));
    REQUIRE(std::fabs(pathloss_inh_nlos(28.0, 5.22) - (-80.8125)) < 0.01);

    REQUIRE_THROWS_AS(pathloss_inh_nlos(28.0, 0.0), std::domain_error);
    REQUIRE_THROWS_AS(pathloss_inh_nlos(28.0, -1.0), std::domain_error);
    REQUIRE_THROWS_AS(pathloss_inh_nlos(0.0, 5.0), std::domain_error);
}

TEST_CASE("default indoor NLoS scenario at 28 GHz", "[gbsm][scenario]")
{
    const ScenarioConfig sc = inh_nlos();
    REQUIRE(sc.fc_ghz == 28.0);
    REQUIRE(sc.n_clusters == 19);
    REQUIRE(sc.m_rays == 20);
    REQUIRE(sc.r_tau == 3.0);
    REQUIRE(sc.lg_ds_mu == Catch::Approx(-7.582471439411708).margin(1e-12));
    REQUIRE(sc.lg_ds_sigma == Catch::Approx(0.20123979978989562).margin(1e-12));
    REQUIRE(sc.lg_asd_mu == 1.62);
    REQUIRE(sc.c_zsd_deg == Catch::Approx(4.508491629815299).margin(1e-12));
    REQUIRE(sc.ray_offset_table.size() == 20);
    REQUIRE_NOTHROW(validate_scenario(sc));

    // the median spreads implied by the lognormal locations
    REQUIRE(std::pow(10.0, sc.lg_ds_mu) * 1e9 == Catch::Approx(26.15).margin(0.005));
    REQUIRE(std::pow(10.0, sc.lg_asd_mu) == Catch::Approx(41.69).margin(0.005));

    SECTION("structurally broken scenarios are rejected")
    {
        ScenarioConfig bad = sc;
        bad.n_clusters = 0;
        REQUIRE_THROWS_AS(validate_scenario(bad), std::invalid_argument);

        bad = sc;
        bad.r_tau = 1.0; // delay scaling needs r_tau > 1
        REQUIRE_THROWS_AS(validate_scenario(bad), std::invalid_argument);

        bad = sc;
        bad.ray_offset_table.pop_back();
        REQUIRE_THROWS_AS(validate_scenario(bad), std::invalid_argument);
    }
}

TEST_CASE("large-scale parameter draws follow the configured lognormals", "[gbsm][lsp]")
{
    const ScenarioConfig sc = inh_nlos();
    RandomStream stream(99);

    const int n = 20000;
    double lg_ds_sum = 0.0;
    double lg_as_sum = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const LspDraw lsp = draw_lsps(sc, stream);
        REQUIRE(lsp.ds_s > 0.0);
        REQUIRE(lsp.asd_deg > 0.0);
        REQUIRE(lsp.asd_deg <= 104.0);
        REQUIRE(lsp.zsd_deg <= 104.0);
        REQUIRE(lsp.sf_linear > 0.0);
        lg_ds_sum += std::log10(lsp.ds_s);
        lg_as_sum += std::log10(lsp.asd_deg);
    }
    REQUIRE(lg_ds_sum / n == Catch::Approx(sc.lg_ds_mu).margin(0.01));
    // the 104-degree clip pulls the azimuth mean slightly below lg_asd_mu
    REQUIRE(lg_as_sum / n == Catch::Approx(sc.lg_asd_mu).margin(0.02));
}

TEST_CASE("cluster delays are sorted, zero-based, exponential", "[gbsm][delays]")
{
    const ScenarioConfig sc = inh_nlos();
    RandomStream stream(5);
    const double ds = 30e-9;
    const std::vector<double> tau = gen_cluster_delays(ds, sc, stream);

    REQUIRE(tau.size() == static_cast<std::size_t>(sc.n_clusters));
    REQUIRE(tau.front() == 0.0);
    REQUIRE(std::is_sorted(tau.begin(), tau.end()));

    double mean = 0.0;
    const int reps = 4000;
    RandomStream s2(6);
    for (int r = 0; r < reps; ++r)
    {
        const std::vector<double> t = gen_cluster_delays(ds, sc, s2);
        for (double v : t)
            mean += v;
    }
    mean /= reps * static_cast<double>(sc.n_clusters);
    // exponential with scale r_tau * ds, minus the minimum of n_clusters draws:
    // E[tau] = r_tau * ds * (1 - 1/n)
    const double expect = sc.r_tau * ds * (1.0 - 1.0 / static_cast<double>(sc.n_clusters));
    REQUIRE(mean == Catch::Approx(expect).epsilon(0.02));

    REQUIRE_THROWS_AS(gen_cluster_delays(0.0, sc, stream), std::domain_error);
}

TEST_CASE("cluster powers are normalized and shadowed", "[gbsm][powers]")
{
    const ScenarioConfig sc = inh_nlos();
    RandomStream ds_stream(5);
    const std::vector<double> tau = gen_cluster_delays(25e-9, sc, ds_stream);
    RandomStream p_stream(17);
    const std::vector<double> p = gen_cluster_powers(tau, 25e-9, sc, p_stream);

    REQUIRE(p.size() == tau.size());
    double sum = 0.0;
    for (double v : p)
    {
        REQUIRE(v > 0.0);
        sum += v;
    }
    REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("cluster angle generation maps power to offset", "[gbsm][angles]")
{
    const std::vector<double> powers = {0.5, 0.3, 0.15, 0.05};
    RandomStream stream(3);

    SECTION("azimuth output wrapped to [0, 360)")
    {
        const std::vector<double> az =
            gen_cluster_angles(40.0, powers, 250.0, AngleKind::azimuth, stream);
        REQUIRE(az.size() == powers.size());
        for (double a : az)
        {
            REQUIRE(a >= 0.0);
            REQUIRE(a < 360.0);
        }
    }

    SECTION("zenith output folded into [0, 180]")
    {
        for (int rep = 0; rep < 50; ++rep)
        {
            const std::vector<double> ze =
                gen_cluster_angles(60.0, powers, 170.0, AngleKind::zenith, stream);
            for (double z : ze)
            {
                REQUIRE(z >= 0.0);
                REQUIRE(z <= 180.0);
            }
        }
    }

    SECTION("strongest cluster sits nearest the center on average")
    {
        // the inverse mapping puts the power-1 cluster at offset 0 (plus jitter)
        double strongest = 0.0;
        double weakest = 0.0;
        RandomStream s(8);
        const int reps = 2000;
        for (int rep = 0; rep < reps; ++rep)
        {
            const std::vector<double> az =
                gen_cluster_angles(30.0, powers, 180.0, AngleKind::azimuth, s);
            strongest += circular_separation_deg(az.front(), 180.0);
            weakest += circular_separation_deg(az.back(), 180.0);
        }
        REQUIRE(strongest / reps < weakest / reps);
    }

    SECTION("unsupported cluster counts for the scaling tables throw")
    {
        const std::vector<double> bad(7, 1.0 / 7.0);
        REQUIRE_THROWS_AS(gen_cluster_angles(30.0, bad, 0.0, AngleKind::azimuth, stream),
                          std::invalid_argument);
    }
}

TEST_CASE("sub-channel assembly", "[gbsm][subchannel]")
{
    const ScenarioConfig sc = inh_nlos();
    const PlacementEntry entry{6.95, 243.28, 90.0};
    const RandomStream stream = RandomStream(2026).fork(0);

    const SubChannelRealization sub = assemble_subchannel(0, entry, sc, stream);

    REQUIRE(sub.paths.size() == static_cast<std::size_t>(sc.n_clusters * sc.m_rays));
    REQUIRE(sub.pl_db == Catch::Approx(pathloss_inh_nlos(sc.fc_ghz, entry.d_m)).margin(1e-12));
    REQUIRE(sub.excess_delay_s == 0.0);

    SECTION("unit total power and the exact delay floor")
    {
        double sum = 0.0;
        double min_delay = 1e9;
        for (const PathRecord& p : sub.paths)
        {
            REQUIRE(p.power_lin > 0.0);
            sum += p.power_lin;
            min_delay = std::min(min_delay, p.abs_delay_s);
        }
        REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(min_delay == entry.d_m / kSpeedOfLight); // bit-exact floor
    }

    SECTION("rays of one cluster share the cluster power equally")
    {
        for (int m = 1; m < sc.m_rays; ++m)
            REQUIRE(sub.paths[static_cast<std::size_t>(m)].power_lin ==
                    Catch::Approx(sub.paths[0].power_lin).margin(1e-18));
    }

    SECTION("zenith disabled pins zod to the placement entry")
    {
        for (const PathRecord& p : sub.paths)
        {
            REQUIRE(p.zod_deg == entry.zod_deg);
            REQUIRE(p.zoa_deg == entry.zod_deg);
        }
    }

    SECTION("per-path polarization and phases")
    {
        for (const PathRecord& p : sub.paths)
        {
            REQUIRE(p.xpr_lin > 0.0);
            for (double ph : p.phases_rad)
            {
                REQUIRE(ph >= 0.0);
                REQUIRE(ph < 2.0 * kPi);
            }
        }
    }

    SECTION("same stream, same sub-channel, bit for bit")
    {
        const SubChannelRealization again = assemble_subchannel(0, entry, sc, stream);
        for (std::size_t i = 0; i < sub.paths.size(); ++i)
        {
            REQUIRE(sub.paths[i].abs_delay_s == again.paths[i].abs_delay_s);
            REQUIRE(sub.paths[i].aod_deg == again.paths[i].aod_deg);
            REQUIRE(sub.paths[i].power_lin == again.paths[i].power_lin);
            REQUIRE(sub.paths[i].phases_rad == again.paths[i].phases_rad);
        }
    }

    SECTION("enabling the zenith feature leaves azimuth draws untouched")
    {
        ScenarioConfig with_zen = sc;
        with_zen.zenith_enabled = true;
        const SubChannelRealization zen = assemble_subchannel(0, entry, with_zen, stream);
        for (std::size_t i = 0; i < sub.paths.size(); ++i)
        {
            REQUIRE(zen.paths[i].aod_deg == sub.paths[i].aod_deg);
            REQUIRE(zen.paths[i].abs_delay_s == sub.paths[i].abs_delay_s);
        }
        bool any_off_horizon = false;
        for (const PathRecord& p : zen.paths)
            any_off_horizon = any_off_horizon || p.zod_deg != entry.zod_deg;
        REQUIRE(any_off_horizon);
    }

    SECTION("monostatic arrival angles mirror the departure angles")
    {
        for (const PathRecord& p : sub.paths)
        {
            REQUIRE(p.aoa_deg == p.aod_deg);
            REQUIRE(p.zoa_deg == p.zod_deg);
        }
    }

    REQUIRE_THROWS_AS(assemble_subchannel(0, PlacementEntry{0.0, 0.0, 90.0}, sc, stream),
                      std::domain_error);
}

TEST_CASE("CIR rendering preserves path power with unit patterns", "[gbsm][cir]")
{
    const ScenarioConfig sc = inh_nlos();
    const RandomStream stream = RandomStream(4).fork(0);
    const SubChannelRealization sub = assemble_subchannel(0, {5.22, 0.0, 90.0}, sc, stream);

    ArrayGeometry geom; // single elements at the origin, theta-only unit patterns
    const auto cir = render_cir({sub}, {1.0}, geom, sc.fc_ghz, 0.0);

    REQUIRE(cir.size() == 1);       // rx elements
    REQUIRE(cir[0].size() == 1);    // tx elements
    REQUIRE(cir[0][0].size() == sub.paths.size());

    double power = 0.0;
    for (const CirTap& tap : cir[0][0])
        power += std::norm(tap.amp);
    REQUIRE(power == Catch::Approx(1.0).margin(1e-9));

    SECTION("a later observation time rotates phases but keeps magnitudes")
    {
        SubChannelRealization moving = sub;
        for (PathRecord& p : moving.paths)
            p.doppler_hz = 50.0;
        const auto cir_t = render_cir({moving}, {1.0}, geom, sc.fc_ghz, 1e-3);
        for (std::size_t i = 0; i < cir_t[0][0].size(); ++i)
            REQUIRE(std::abs(cir_t[0][0][i].amp) ==
                    Catch::Approx(std::abs(cir[0][0][i].amp)).margin(1e-12));
    }

    SECTION("element offsets change phases only")
    {
        ArrayGeometry two = geom;
        two.rx_elements_m = {{0.0, 0.0, 0.0}, {0.005, 0.0, 0.0}};
        const auto cir2 = render_cir({sub}, {1.0}, two, sc.fc_ghz, 0.0);
        REQUIRE(cir2.size() == 2);
        double p2 = 0.0;
        for (const CirTap& tap : cir2[1][0])
            p2 += std::norm(tap.amp);
        REQUIRE(p2 == Catch::Approx(1.0).margin(1e-9));
    }

    SECTION("amplitude scale applies per sub-channel")
    {
        const auto scaled = render_cir({sub}, {0.5}, geom, sc.fc_ghz, 0.0);
        double p = 0.0;
        for (const CirTap& tap : scaled[0][0])
            p += std::norm(tap.amp);
        REQUIRE(p == Catch::Approx(0.25).margin(1e-9));
    }

    REQUIRE_THROWS_AS(render_cir({sub}, {1.0, 2.0}, geom, sc.fc_ghz, 0.0), std::invalid_argument);
    ArrayGeometry empty;
    empty.tx_elements_m.clear();
    REQUIRE_THROWS_AS(render_cir({sub}, {1.0}, empty, sc.fc_ghz, 0.0), std::invalid_argument);
}
