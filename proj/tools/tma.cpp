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

// tma: pattern sweeps, metric reports, architecture comparison and
// receiver simulation from JSON configurations.
//
// Exit codes: 0 success, 2 configuration error, 3 numeric error.

#include "tmabeam/report.hpp"
#include "tmabeam/series_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace
{

using namespace tmabeam;
using namespace tmabeam::report;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Overrides
{
    std::optional<double> angle_step;
    std::optional<int> band_limit;
    std::optional<std::string> directivity_mode;
};

RunConfig load_with_overrides(const std::string &path, const Overrides &o)
{
    RunConfig config = load_run_config(path);
    if (o.angle_step)
    {
        if (!(*o.angle_step > 0.0 && *o.angle_step <= 180.0))
            throw ConfigError("--angle-step must lie in (0, 180]");
        config.analysis.angle_step_deg = *o.angle_step;
    }
    if (o.band_limit)
    {
        if (*o.band_limit < config.harmonics)
            throw ConfigError("--harmonics must be at least the exploited harmonic count");
        config.analysis.band_limit = *o.band_limit;
    }
    if (o.directivity_mode)
        config.analysis.directivity = parse_directivity_output(*o.directivity_mode);
    return config;
}

void write_text(const std::string &path, const std::string &text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ConfigError("cannot open " + path + " for writing");
    out << text;
    if (!out)
        throw ConfigError("failed writing " + path);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"tma - time-modulated array harmonic beamforming"};
    app.require_subcommand(1);

    std::vector<std::string> configs;
    std::string out;
    Overrides overrides;
    bool dump_series = false;

    auto add_analysis_flags = [&](CLI::App *cmd) {
        cmd->add_option("--angle-step", overrides.angle_step, "pattern grid step in degrees");
        cmd->add_option("--harmonics", overrides.band_limit, "band limit Q of the excitation grid");
        cmd->add_option("--directivity-mode", overrides.directivity_mode, "both | pattern-only | total-power");
    };

    CLI::App *pattern = app.add_subcommand("pattern", "write the harmonic power patterns as CSV");
    pattern->add_option("--config", configs, "run configuration (JSON)")->required()->expected(1);
    pattern->add_option("--out", out, "output CSV path (default: stdout)");
    add_analysis_flags(pattern);

    CLI::App *metrics = app.add_subcommand("metrics", "print efficiency, directivity and lobe metrics as JSON");
    metrics->add_option("--config", configs, "run configuration (JSON)")->required()->expected(1);
    metrics->add_option("--out", out, "output JSON path (default: stdout)");
    add_analysis_flags(metrics);

    CLI::App *compare_cmd = app.add_subcommand("compare", "compare 2 or 3 architectures on a shared beam plan");
    compare_cmd->add_option("--config", configs, "run configurations (JSON), repeat 2 or 3 times")
        ->required()
        ->expected(1, 3);
    compare_cmd->add_option("--out", out, "also write the table as CSV to this path");
    add_analysis_flags(compare_cmd);

    CLI::App *simulate_cmd = app.add_subcommand("simulate", "simulate the receiver for a scene");
    simulate_cmd->add_option("--config", configs, "scene (JSON)")->required()->expected(1);
    simulate_cmd->add_option("--out", out, "output prefix; writes <prefix>.report.json")->required();
    simulate_cmd->add_flag("--dump-series", dump_series, "also write <prefix>.series.bin");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    // Configuration stage: anything thrown here is a configuration error.
    std::vector<RunConfig> runs;
    std::optional<Scene> scene;
    try
    {
        if (*simulate_cmd)
            scene = load_scene(configs.front());
        else
            for (const std::string &path : configs)
                runs.push_back(load_with_overrides(path, overrides));
        if (*compare_cmd && runs.size() < 2)
            throw ConfigError("compare needs at least two --config files");
    }
    catch (const std::exception &e)
    {
        std::cerr << "tma: configuration error: " << e.what() << "\n";
        return kExitConfig;
    }

    try
    {
        if (*pattern)
            write_text(out, pattern_csv(runs.front()));
        else if (*metrics)
            write_text(out, metrics_json(runs.front()));
        else if (*compare_cmd)
        {
            const Comparison c = compare(runs);
            std::cout << c.table;
            if (!out.empty())
                write_text(out, c.csv);
        }
        else if (*simulate_cmd)
        {
            const SimulationOutput sim = simulate(*scene);
            write_text(out + ".report.json", link_report_json(*scene, sim.link));
            if (dump_series)
                write_series(out + ".series.bin",
                             TimeSeries{static_cast<std::uint32_t>(scene->sample_rate()), sim.series});
        }
    }
    catch (const ConfigError &e)
    {
        std::cerr << "tma: configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "tma: numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
