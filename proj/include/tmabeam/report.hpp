// SPDX-License-Identifier: Apache-2.0
//
// tmabeam - time-modulated array harmonic beamforming simulation
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Workflows behind the `tma` command line: run configurations, pattern CSV,
// metrics JSON, architecture comparison and scene simulation. The document
// schemas are described in docs/config_schema.md.

#include "tmabeam/core.hpp"
#include "tmabeam/excitation.hpp"
#include "tmabeam/metrics.hpp"
#include "tmabeam/pulse.hpp"
#include "tmabeam/timesim.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tmabeam::report
{

// Unreadable or invalid configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Architecture
{
    rect,
    swc,
    ssb
};

std::string_view to_string(Architecture a);

enum class DirectivityOutput
{
    both,
    pattern_only,
    total_power
};

struct AnalysisOptions
{
    int band_limit = 50;
    double angle_step_deg = 0.1;
    DirectivityOutput directivity = DirectivityOutput::both;
    std::size_t integration_points = kDefaultIntegrationPoints;
};

using ArchitectureParams = std::variant<RectPulseParams, SWCParams, SSBParams>;

struct RunConfig
{
    std::string name;
    ArrayGeometry geometry;
    Architecture architecture;
    int harmonics; // L
    std::vector<Beam> beams;
    ArchitectureParams params;
    AnalysisOptions analysis;
};

// Throws ConfigError for anything malformed, including parameter values that
// the library rejects.
RunConfig parse_run_config(std::string_view text, std::string name = "config");
RunConfig load_run_config(const std::filesystem::path &path);

DirectivityOutput parse_directivity_output(std::string_view text);

ExcitationGrid build_grid(const RunConfig &config);

// q = 0..L-1 for switched and SWC pulses, q = 1..L for SSB.
std::set<int> useful_harmonics(const RunConfig &config);

// Harmonics written by pattern_csv, ascending: planned q for SSB; 0 plus the
// planned +-q pairs for the real-pulse architectures.
std::vector<int> pattern_harmonics(const RunConfig &config);

// "theta_deg,q,power_db" rows, q ascending then theta ascending. Powers are
// normalized to the maximum over all written harmonics.
std::string pattern_csv(const RunConfig &config);

MetricsReport run_metrics(const RunConfig &config);
std::string metrics_json(const RunConfig &config);

struct Comparison
{
    std::string table; // aligned text
    std::string csv;
    bool ordering_holds; // ssb > swc > rect on total-power directivity of beam A
};

// 2..3 configurations sharing geometry and beam angles.
Comparison compare(const std::vector<RunConfig> &configs);

// 9 significant digits, '.' separator; -inf, inf and nan spelled out.
std::string format_number(double value);

Scene parse_scene(std::string_view text, const std::filesystem::path &base_dir = {});
Scene load_scene(const std::filesystem::path &path);

struct SimulationOutput
{
    std::vector<Complex> series;
    std::vector<std::vector<Complex>> recovered;
    LinkReport link;
};

SimulationOutput simulate(const Scene &scene);
std::string link_report_json(const Scene &scene, const LinkReport &link);

} // namespace tmabeam::report
