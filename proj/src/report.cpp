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

#include "tmabeam/report.hpp"

#include "tmabeam/series_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tmabeam::report
{

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace
{

std::string read_text(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_document(std::string_view text)
{
    try
    {
        return json::parse(text.begin(), text.end(), nullptr, true, true);
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("malformed document: ") + e.what());
    }
}

const json &section(const json &doc, const char *key)
{
    if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_object())
        throw ConfigError(std::string("missing section '") + key + "'");
    return doc.at(key);
}

template <class T>
T field(const json &obj, const char *key, const char *where)
{
    if (!obj.contains(key))
        throw ConfigError(std::string(where) + ": missing key '" + key + "'");
    try
    {
        return obj.at(key).get<T>();
    }
    catch (const json::exception &)
    {
        throw ConfigError(std::string(where) + ": key '" + key + "' has the wrong type");
    }
}

template <class T>
T field_or(const json &obj, const char *key, T fallback, const char *where)
{
    return obj.contains(key) ? field<T>(obj, key, where) : fallback;
}

ArrayGeometry parse_geometry(const json &doc)
{
    const json &g = section(doc, "geometry");
    if (g.contains("positions"))
        return ArrayGeometry(field<std::vector<double>>(g, "positions", "geometry"));
    return build_uniform_geometry(field<int>(g, "n_elements", "geometry"), field<double>(g, "spacing", "geometry"));
}

std::vector<double> parse_taper(const json &arch, std::size_t n_elements)
{
    const json &t = section(arch, "taper");
    std::vector<double> taper;
    if (t.contains("values"))
        taper = field<std::vector<double>>(t, "values", "taper");
    else if (t.contains("gaussian_sigma"))
        taper = gaussian_taper(static_cast<int>(n_elements), field<double>(t, "gaussian_sigma", "taper"));
    else if (t.contains("uniform"))
        taper.assign(n_elements, field<double>(t, "uniform", "taper"));
    else
        throw ConfigError("taper: expected one of 'values', 'gaussian_sigma', 'uniform'");

    const double scale = field_or<double>(t, "scale", 1.0, "taper");
    for (double &v : taper)
        v *= scale;
    if (taper.size() != n_elements)
        throw ConfigError("taper: length does not match the element count");
    return taper;
}

std::vector<Beam> parse_beams(const json &doc)
{
    std::vector<Beam> beams;
    if (!doc.contains("beams"))
        return beams;
    if (!doc.at("beams").is_array())
        throw ConfigError("'beams' must be an array");
    for (const json &b : doc.at("beams"))
        beams.push_back({field<int>(b, "harmonic", "beam"), field<double>(b, "theta_deg", "beam")});
    return beams;
}

PhaseMatrix parse_table(const json &arch, const char *key, std::size_t rows, int L)
{
    const auto table = field<std::vector<std::vector<double>>>(arch, key, "architecture");
    if (table.size() != rows)
        throw ConfigError(std::string("architecture: '") + key + "' needs one row per element");
    std::vector<int> orders;
    for (int q = 1; q <= L; ++q)
        orders.push_back(q);
    std::vector<double> values;
    for (const auto &row : table)
    {
        if (row.size() != static_cast<std::size_t>(L))
            throw ConfigError(std::string("architecture: '") + key + "' rows need L entries");
        values.insert(values.end(), row.begin(), row.end());
    }
    return PhaseMatrix(rows, std::move(orders), std::move(values));
}

Architecture parse_architecture_type(const json &arch)
{
    const auto type = field<std::string>(arch, "type", "architecture");
    if (type == "rect")
        return Architecture::rect;
    if (type == "swc")
        return Architecture::swc;
    if (type == "ssb")
        return Architecture::ssb;
    throw ConfigError("architecture: unknown type '" + type + "'");
}

ArchitectureParams parse_params(const json &arch, Architecture type, int L, const ArrayGeometry &geometry,
                                const std::vector<Beam> &beams)
{
    const std::size_t N = geometry.size();
    std::vector<double> taper = parse_taper(arch, N);
    // Explicit switching schedules bypass the plan, so a switched-off element
    // (duty 0) stays expressible.
    if (type == Architecture::rect && arch.contains("delay"))
        return RectPulseParams(std::move(taper), field<std::vector<double>>(arch, "delay", "architecture"));

    const BeamPlan plan(beams, std::move(taper));
    switch (type)
    {
    case Architecture::rect:
        return rect_params_from_plan(geometry, plan);
    case Architecture::swc: {
        const auto weights = field<std::vector<double>>(arch, "weights", "architecture");
        if (weights.size() != static_cast<std::size_t>(L))
            throw ConfigError("architecture: swc 'weights' needs L entries (DC plus L-1 cosine orders)");
        return swc_params_from_plan(geometry, plan, weights);
    }
    case Architecture::ssb: {
        std::vector<double> duty(plan.taper().begin(), plan.taper().end());
        if (arch.contains("phases"))
            return SSBParams(std::move(duty), parse_table(arch, "phases", N, L));
        if (arch.contains("delays"))
        {
            const PhaseMatrix t = parse_table(arch, "delays", N, L);
            return SSBParams::from_delays(std::move(duty), DelayMatrix(N, {t.orders().begin(), t.orders().end()},
                                                                       {t.values().begin(), t.values().end()}));
        }
        return ssb_params_from_plan(geometry, plan, L);
    }
    }
    throw ConfigError("architecture: unsupported type");
}

double rounded(double v)
{
    return std::strtod(format_number(v).c_str(), nullptr);
}

// JSON number with 9 significant digits; non-finite values become null.
ordered_json number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return rounded(v);
}

ordered_json number(const std::optional<double> &v)
{
    return v ? number(*v) : ordered_json(nullptr);
}

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width)
        s.insert(0, width - s.size(), ' ');
    return s;
}

const char *kCompareHeader[] = {"config", "architecture", "eta", "d_pattern_dbi", "d_total_dbi", "sll_db"};

} // namespace

std::string_view to_string(Architecture a)
{
    switch (a)
    {
    case Architecture::rect:
        return "rect";
    case Architecture::swc:
        return "swc";
    case Architecture::ssb:
        return "ssb";
    }
    return "unknown";
}

DirectivityOutput parse_directivity_output(std::string_view text)
{
    if (text == "both")
        return DirectivityOutput::both;
    if (text == "pattern-only")
        return DirectivityOutput::pattern_only;
    if (text == "total-power")
        return DirectivityOutput::total_power;
    throw ConfigError("directivity mode must be both, pattern-only or total-power");
}

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    std::string s(buf);
    if (s == "-0")
        s = "0";
    return s;
}

RunConfig parse_run_config(std::string_view text, std::string name)
{
    const json doc = parse_document(text);
    try
    {
        ArrayGeometry geometry = parse_geometry(doc);
        const json &arch = section(doc, "architecture");
        const Architecture type = parse_architecture_type(arch);
        const int L = field<int>(arch, "harmonics", "architecture");
        if (L < 1)
            throw ConfigError("architecture: 'harmonics' must be positive");
        std::vector<Beam> beams = parse_beams(doc);

        AnalysisOptions analysis;
        if (doc.contains("analysis"))
        {
            const json &a = section(doc, "analysis");
            analysis.band_limit = field_or<int>(a, "band_limit", analysis.band_limit, "analysis");
            analysis.angle_step_deg = field_or<double>(a, "angle_step_deg", analysis.angle_step_deg, "analysis");
            analysis.integration_points =
                field_or<std::size_t>(a, "integration_points", analysis.integration_points, "analysis");
            if (a.contains("directivity_mode"))
                analysis.directivity = parse_directivity_output(field<std::string>(a, "directivity_mode", "analysis"));
        }
        if (analysis.band_limit < L)
            throw ConfigError("analysis: band_limit must be at least the harmonic count");
        if (!(analysis.angle_step_deg > 0.0 && analysis.angle_step_deg <= 180.0))
            throw ConfigError("analysis: angle_step_deg must lie in (0, 180]");

        ArchitectureParams params = parse_params(arch, type, L, geometry, beams);
        return RunConfig{std::move(name), std::move(geometry), type, L, std::move(beams), std::move(params), analysis};
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
}

RunConfig load_run_config(const std::filesystem::path &path)
{
    return parse_run_config(read_text(path), path.stem().string());
}

ExcitationGrid build_grid(const RunConfig &config)
{
    const int Q = config.analysis.band_limit;
    return std::visit(
        [Q](const auto &p) -> ExcitationGrid {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, RectPulseParams>)
                return grid_from_rect(p, Q);
            else if constexpr (std::is_same_v<T, SWCParams>)
                return grid_from_swc(p, Q);
            else
                return grid_from_ssb(p, Q);
        },
        config.params);
}

std::set<int> useful_harmonics(const RunConfig &config)
{
    std::set<int> useful;
    const bool ssb = config.architecture == Architecture::ssb;
    for (int i = 0; i < config.harmonics; ++i)
        useful.insert(ssb ? i + 1 : i);
    return useful;
}

std::vector<int> pattern_harmonics(const RunConfig &config)
{
    std::set<int> qs;
    if (config.architecture != Architecture::ssb)
        qs.insert(0);
    for (const Beam &b : config.beams)
    {
        qs.insert(b.harmonic);
        if (config.architecture != Architecture::ssb)
            qs.insert(-b.harmonic);
    }
    return {qs.begin(), qs.end()};
}

std::string pattern_csv(const RunConfig &config)
{
    const ExcitationGrid grid = build_grid(config);
    const std::vector<double> theta = angle_grid(config.analysis.angle_step_deg);
    const std::vector<int> harmonics = pattern_harmonics(config);

    std::vector<HarmonicPattern> patterns;
    double reference = 0.0;
    for (int q : harmonics)
    {
        patterns.push_back(evaluate_pattern(grid, config.geometry, q, theta));
        for (const Complex &v : patterns.back().values)
            reference = std::max(reference, std::norm(v));
    }

    std::string out = "theta_deg,q,power_db\n";
    for (const HarmonicPattern &p : patterns)
    {
        for (std::size_t i = 0; i < theta.size(); ++i)
        {
            const double power = std::norm(p.values[i]);
            const double db = power > 0.0 && reference > 0.0 ? 10.0 * std::log10(power / reference)
                                                             : -std::numeric_limits<double>::infinity();
            out += format_number(theta[i]);
            out += ',';
            out += std::to_string(p.harmonic);
            out += ',';
            out += format_number(db);
            out += '\n';
        }
    }
    return out;
}

MetricsReport run_metrics(const RunConfig &config)
{
    const ExcitationGrid grid = build_grid(config);
    return compute_metrics(grid, config.geometry, config.beams, useful_harmonics(config),
                           angle_grid(config.analysis.angle_step_deg), config.analysis.integration_points);
}

std::string metrics_json(const RunConfig &config)
{
    const MetricsReport m = run_metrics(config);

    ordered_json doc;
    doc["architecture"] = std::string(to_string(config.architecture));
    doc["n_elements"] = config.geometry.size();
    doc["harmonics_L"] = config.harmonics;
    doc["band_limit_Q"] = config.analysis.band_limit;
    doc["useful"] = std::vector<int>(m.useful.begin(), m.useful.end());
    doc["eta"] = number(m.eta);

    double total = 0.0;
    ordered_json pq = ordered_json::object();
    for (const auto &[q, p] : m.p_q)
    {
        pq[std::to_string(q)] = number(p);
        total += p;
    }
    doc["total_power"] = number(total);
    doc["p_q"] = std::move(pq);

    const bool want_pattern = config.analysis.directivity != DirectivityOutput::total_power;
    const bool want_total = config.analysis.directivity != DirectivityOutput::pattern_only;
    ordered_json beams = ordered_json::array();
    for (const BeamMetrics &b : m.beams)
    {
        ordered_json e;
        e["harmonic"] = b.harmonic;
        e["target_deg"] = number(b.target_deg);
        e["peak_deg"] = number(b.stats.peak_deg);
        e["sll_db"] = number(b.stats.sll_db);
        e["beamwidth_deg"] = number(b.stats.beamwidth_deg);
        e["directivity_dbi"] = {
            {"pattern_only", want_pattern ? number(b.directivity_pattern_dbi) : ordered_json(nullptr)},
            {"total_power", want_total ? number(b.directivity_total_dbi) : ordered_json(nullptr)}};
        beams.push_back(std::move(e));
    }
    doc["beams"] = std::move(beams);
    return doc.dump(2) + "\n";
}

Comparison compare(const std::vector<RunConfig> &configs)
{
    if (configs.size() < 2 || configs.size() > 3)
        throw ConfigError("compare: expected 2 or 3 configurations");
    const RunConfig &first = configs.front();
    for (const RunConfig &c : configs)
    {
        if (!(c.geometry == first.geometry))
            throw ConfigError("compare: '" + c.name + "' has a different geometry than '" + first.name + "'");
        if (c.beams.empty())
            throw ConfigError("compare: '" + c.name + "' has no beams");
        if (c.beams.size() != first.beams.size())
            throw ConfigError("compare: '" + c.name + "' has a different beam plan");
        for (std::size_t i = 0; i < c.beams.size(); ++i)
            if (std::abs(c.beams[i].theta_deg - first.beams[i].theta_deg) > 1e-6)
                throw ConfigError("compare: '" + c.name + "' steers beam " + std::to_string(i) + " elsewhere");
    }

    struct Row
    {
        std::vector<std::string> cells;
        Architecture arch;
        double d_total;
    };
    std::vector<Row> rows;
    for (const RunConfig &c : configs)
    {
        const MetricsReport m = run_metrics(c);
        const BeamMetrics &a = m.beams.front();
        rows.push_back({{c.name, std::string(to_string(c.architecture)), format_number(m.eta),
                         format_number(a.directivity_pattern_dbi), format_number(a.directivity_total_dbi),
                         a.stats.sll_db ? format_number(*a.stats.sll_db) : std::string("none")},
                        c.architecture,
                        a.directivity_total_dbi});
    }

    // Expected ranking on total-power directivity: ssb > swc > rect.
    auto rank = [](Architecture a) { return a == Architecture::ssb ? 2 : a == Architecture::swc ? 1 : 0; };
    bool holds = true;
    for (const Row &x : rows)
        for (const Row &y : rows)
            if (rank(x.arch) > rank(y.arch) && !(x.d_total > y.d_total))
                holds = false;

    Comparison out{"", "", holds};
    const std::size_t cols = std::size(kCompareHeader);
    std::vector<std::size_t> width(cols);
    for (std::size_t k = 0; k < cols; ++k)
    {
        width[k] = std::string(kCompareHeader[k]).size();
        for (const Row &r : rows)
            width[k] = std::max(width[k], r.cells[k].size());
    }
    for (std::size_t k = 0; k < cols; ++k)
    {
        out.table += (k ? "  " : "") + pad(kCompareHeader[k], width[k]);
        out.csv += (k ? "," : "") + std::string(kCompareHeader[k]);
    }
    out.table += '\n';
    out.csv += '\n';
    for (const Row &r : rows)
    {
        for (std::size_t k = 0; k < cols; ++k)
        {
            out.table += (k ? "  " : "") + pad(r.cells[k], width[k]);
            out.csv += (k ? "," : "") + r.cells[k];
        }
        out.table += '\n';
        out.csv += '\n';
    }
    out.table += std::string("ordering ssb > swc > rect on total-power directivity (beam A): ") +
                 (holds ? "holds" : "violated") + "\n";
    return out;
}

// ---- scenes --------------------------------------------------------------

Scene parse_scene(std::string_view text, const std::filesystem::path &base_dir)
{
    const json doc = parse_document(text);
    try
    {
        ArrayGeometry geometry = parse_geometry(doc);
        const json &arch = section(doc, "architecture");
        const Architecture type = parse_architecture_type(arch);
        if (type == Architecture::swc)
            throw ConfigError("scene: the receiver simulation supports rect and ssb modulation only");
        const int L = field<int>(arch, "harmonics", "architecture");
        if (L < 1)
            throw ConfigError("architecture: 'harmonics' must be positive");
        const std::vector<Beam> beams = parse_beams(doc);
        ArchitectureParams params = parse_params(arch, type, L, geometry, beams);
        Modulation modulation = type == Architecture::ssb ? Modulation(std::get<SSBParams>(params))
                                                          : Modulation(std::get<RectPulseParams>(params));

        const json &sampling = section(doc, "sampling");
        const int fs = field<int>(sampling, "sample_rate", "sampling");
        const double duration = field<double>(sampling, "duration", "sampling");
        const double t0 = field_or<double>(sampling, "time_origin", 0.0, "sampling");
        if (fs <= 0 || !(duration > 0.0))
            throw ConfigError("sampling: sample_rate and duration must be positive");
        const auto length = static_cast<std::size_t>(std::llround(duration * fs));

        std::vector<Stream> streams;
        if (doc.contains("streams"))
        {
            if (!doc.at("streams").is_array())
                throw ConfigError("'streams' must be an array");
            for (const json &s : doc.at("streams"))
            {
                Stream stream{field<double>(s, "doa_deg", "stream"), field<int>(s, "harmonic", "stream"), 0.0, {}};
                const json &w = section(s, "waveform");
                const auto kind = field<std::string>(w, "type", "waveform");
                if (kind == "cw")
                {
                    const auto amp = field_or<std::vector<double>>(w, "amplitude", {1.0, 0.0}, "waveform");
                    if (amp.size() != 2)
                        throw ConfigError("waveform: 'amplitude' is [real, imag]");
                    stream.baseband = cw_waveform({amp[0], amp[1]}, length);
                }
                else if (kind == "multitone")
                {
                    stream.bandwidth = field<double>(w, "bandwidth", "waveform");
                    stream.baseband = multitone_waveform(stream.bandwidth, length, fs,
                                                         field_or<std::uint64_t>(w, "seed", 1, "waveform"));
                }
                else if (kind == "file")
                {
                    const std::filesystem::path p = base_dir / field<std::string>(w, "path", "waveform");
                    if (!std::filesystem::exists(p))
                        throw ConfigError("waveform file does not exist: " + p.string());
                    TimeSeries ts = read_series(p);
                    if (ts.sample_rate != static_cast<std::uint32_t>(fs))
                        throw ConfigError("waveform file sample rate differs from the scene");
                    stream.bandwidth = field<double>(w, "bandwidth", "waveform");
                    stream.baseband = std::move(ts.samples);
                }
                else
                    throw ConfigError("waveform: unknown type '" + kind + "'");
                streams.push_back(std::move(stream));
            }
        }
        return Scene(std::move(geometry), std::move(modulation), std::move(streams), duration, fs, t0);
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError(e.what());
    }
    catch (const std::runtime_error &e)
    {
        if (dynamic_cast<const ConfigError *>(&e))
            throw;
        throw ConfigError(e.what());
    }
}

Scene load_scene(const std::filesystem::path &path)
{
    return parse_scene(read_text(path), path.parent_path());
}

SimulationOutput simulate(const Scene &scene)
{
    double bandwidth = 0.0;
    for (const Stream &s : scene.streams())
        bandwidth = std::max(bandwidth, s.bandwidth);

    SimulationOutput out;
    out.series = synthesize_received(scene);
    out.recovered = demux(out.series, scene.sample_rate(), scene.exploited_order(), bandwidth, scene.time_origin());
    out.link = link_metrics(scene, out.recovered);
    return out;
}

std::string link_report_json(const Scene &scene, const LinkReport &link)
{
    ordered_json doc;
    doc["modulation"] = std::holds_alternative<SSBParams>(scene.modulation()) ? "ssb" : "rect";
    doc["sample_rate"] = scene.sample_rate();
    doc["length"] = scene.length();
    doc["harmonics_L"] = scene.exploited_order();

    double peak = 0.0;
    for (const SpectralLine &l : link.lines)
        peak = std::max(peak, std::abs(l.amplitude));
    ordered_json lines = ordered_json::array();
    for (const SpectralLine &l : link.lines)
    {
        const double mag = std::abs(l.amplitude);
        const double dbc = mag > 0.0 && peak > 0.0 ? std::max(20.0 * std::log10(mag / peak), -kDbClamp) : -kDbClamp;
        lines.push_back(ordered_json{{"harmonic", l.harmonic},
                                     {"re", number(l.amplitude.real())},
                                     {"im", number(l.amplitude.imag())},
                                     {"level_dbc", number(dbc)}});
    }
    doc["lines"] = std::move(lines);

    ordered_json irr = ordered_json::array();
    for (const auto &v : link.image_rejection_db)
        irr.push_back(number(v));
    doc["image_rejection_db"] = std::move(irr);

    ordered_json xt = ordered_json::array();
    for (const auto &row : link.crosstalk_db)
    {
        ordered_json r = ordered_json::array();
        for (const auto &v : row)
            r.push_back(number(v));
        xt.push_back(std::move(r));
    }
    doc["crosstalk_db"] = std::move(xt);

    ordered_json err = ordered_json::array();
    for (double v : link.normalized_error)
        err.push_back(number(v));
    doc["normalized_error"] = std::move(err);
    return doc.dump(2) + "\n";
}

} // namespace tmabeam::report
