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

#include <string>
#include <vector>

#include "mrpchan/ga_mrpe.hpp"
#include "mrpchan/gbsm.hpp"
#include "mrpchan/scenario.hpp"
#include "mrpchan/stats.hpp"
#include "mrpchan/types.hpp"

namespace mrpchan
{

/*!
 * Bundle of everything a simulation or calibration run needs: the propagation
 * scenario, the placement constraint set, the optimizer settings, and the
 * measured targets.
 */
struct SimulationConfig
{
    ScenarioConfig scenario;  //!< Drop-based channel generation parameters
    ConstraintSet constraints; //!< Reference-point placement bounds and separations
    GaConfig ga;               //!< Calibration engine settings
    MeasuredTargets targets;   //!< Measured large-scale statistics to match
};

/*!
 * Returns the built-in default configuration (indoor NLoS at 28 GHz, the
 * constraint and optimizer defaults of the respective structs).
 */
SimulationConfig default_config();

/*!
 * Parses a JSON configuration text.
 *
 * All four sections (<tt>scenario, constraints, ga, targets</tt>) are optional and
 * default as in default_config(). Unknown keys are rejected. Every numeric field
 * also accepts an expression string understood by eval_expression() with the
 * variable <tt>fc</tt> bound to the carrier frequency in GHz, so
 * frequency-dependent parameters can be written as formulas. <tt>ga.w_pl</tt>
 * accepts the string <tt>"hard"</tt> (exact path-loss matching by gene repair) or
 * a number (soft penalty weight).
 *
 * @param json_text   UTF-8 JSON document.
 * @return Fully resolved configuration.
 * @throws std::runtime_error naming the offending key on any parse or validation error.
 */
SimulationConfig parse_config(const std::string& json_text);

/*!
 * Reads and parses a JSON configuration file.
 *
 * @throws std::runtime_error when the file cannot be read or parse_config() fails.
 */
SimulationConfig load_config(const std::string& path);

/*!
 * Serializes a configuration to JSON with all values resolved to numbers.
 * Key order is deterministic; dump_config() followed by parse_config() reproduces
 * every field to better than 1e-9 relative.
 */
std::string dump_config(const SimulationConfig& cfg);

/*!
 * Reads a path list from CSV with header <tt>delay_ns,aod_deg,zod_deg,power_db</tt>.
 * An empty zenith cell defaults to 90 degrees. Powers are stored in dB and
 * converted to linear. Malformed rows raise std::runtime_error naming the line.
 */
PathList read_pathlist_csv(const std::string& path);

//! Writes a path list as CSV (same header as read_pathlist_csv, full precision).
void write_pathlist_csv(const std::string& path, const PathList& paths);

/*!
 * Writes composed per-path rows as CSV with header
 * <tt>rp,cluster,ray,abs_delay_ns,aod_deg,zod_deg,power_lin</tt>.
 */
void write_weighted_paths_csv(const std::string& path, const std::vector<PathRecord>& paths);

/*!
 * Writes a power-angle-delay map as CSV with header <tt>angle_deg,delay_ns,power_db</tt>,
 * one row per grid cell in angle-major order. Zero power is clamped to -300 dB.
 */
void write_padp_csv(const std::string& path, const PadpGrid& grid);

} // namespace mrpchan
