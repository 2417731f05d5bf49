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

#include "tmabeam/excitation.hpp"
#include "tmabeam/metrics.hpp"
#include "tmabeam/pulse.hpp"
#include "tmabeam/report.hpp"
#include "tmabeam/timesim.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace tmabeam;

namespace
{

py::array_t<Complex> grid_array(const ExcitationGrid &g)
{
    const int Q = g.band_limit();
    const auto cols = static_cast<py::ssize_t>(2 * Q + 1);
    py::array_t<Complex> out({static_cast<py::ssize_t>(g.n_elements()), cols});
    auto v = out.mutable_unchecked<2>();
    for (std::size_t n = 0; n < g.n_elements(); ++n)
        for (int q = -Q; q <= Q; ++q)
            v(static_cast<py::ssize_t>(n), q + Q) = g.at(n, q);
    return out;
}

PhaseMatrix phase_matrix(const std::vector<std::vector<double>> &rows)
{
    if (rows.empty())
        throw std::invalid_argument("phases: need at least one row");
    const std::size_t L = rows.front().size();
    std::vector<int> orders;
    for (std::size_t q = 1; q <= L; ++q)
        orders.push_back(static_cast<int>(q));
    std::vector<double> flat;
    for (const auto &r : rows)
    {
        if (r.size() != L)
            throw std::invalid_argument("phases: ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return PhaseMatrix(rows.size(), orders, flat);
}

DirectivityMode mode_from(const std::string &s)
{
    if (s == "pattern-only" || s == "pattern_only")
        return DirectivityMode::pattern_only;
    if (s == "total-power" || s == "total_power")
        return DirectivityMode::total_power;
    throw std::invalid_argument("directivity mode must be pattern-only or total-power");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Time-modulated array harmonic beamforming";

    py::register_exception<report::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<UndefinedEfficiencyError>(m, "UndefinedEfficiencyError", PyExc_ArithmeticError);

    py::class_<ArrayGeometry>(m, "ArrayGeometry")
        .def(py::init<std::vector<double>>(), py::arg("positions"))
        .def_property_readonly("positions",
                               [](const ArrayGeometry &g) {
                                   return std::vector<double>(g.positions().begin(), g.positions().end());
                               })
        .def("__len__", &ArrayGeometry::size);
    m.def("uniform_geometry", &build_uniform_geometry, py::arg("n_elements"), py::arg("spacing"));

    py::class_<RectPulseParams>(m, "RectPulseParams")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("duty"), py::arg("delay"));
    py::class_<SWCParams>(m, "SWCParams")
        .def(py::init<std::vector<double>, std::vector<std::vector<double>>, std::vector<std::vector<double>>>(),
             py::arg("duty"), py::arg("weights"), py::arg("phases"));
    py::class_<SSBParams>(m, "SSBParams")
        .def(py::init([](std::vector<double> duty, const std::vector<std::vector<double>> &phases) {
                 return SSBParams(std::move(duty), phase_matrix(phases));
             }),
             py::arg("duty"), py::arg("phases"));

    py::class_<ExcitationGrid>(m, "ExcitationGrid")
        .def_property_readonly("n_elements", &ExcitationGrid::n_elements)
        .def_property_readonly("band_limit", &ExcitationGrid::band_limit)
        .def_property_readonly("provenance", [](const ExcitationGrid &g) { return std::string(to_string(g.provenance())); })
        .def("at", &ExcitationGrid::at, py::arg("n"), py::arg("q"))
        .def("to_numpy", &grid_array, "Rows are elements, columns are q = -Q..Q.");

    m.def("rect_coeff", [](double duty, double delay, int q) { return rect_coeff(RectPulseParams({duty}, {delay}), 0, q); },
          py::arg("duty"), py::arg("delay"), py::arg("q"));
    m.def("grid_from_rect", &grid_from_rect, py::arg("params"), py::arg("band_limit"));
    m.def("grid_from_swc", &grid_from_swc, py::arg("params"), py::arg("band_limit"));
    m.def("grid_from_ssb", &grid_from_ssb, py::arg("params"), py::arg("band_limit"));
    m.def("gaussian_taper", &gaussian_taper, py::arg("n_elements"), py::arg("sigma"));

    m.def("angle_grid", &angle_grid, py::arg("step_deg") = 0.1);
    m.def("array_factor", &array_factor, py::arg("grid"), py::arg("geometry"), py::arg("q"), py::arg("theta_deg"));
    m.def(
        "power_pattern",
        [](const ExcitationGrid &g, const ArrayGeometry &geo, int q, const std::vector<double> &theta) {
            return power_pattern(g, geo, q, theta);
        },
        py::arg("grid"), py::arg("geometry"), py::arg("q"), py::arg("theta_deg"));
    m.def("harmonic_powers", &harmonic_powers, py::arg("grid"));
    m.def("efficiency", &efficiency, py::arg("powers"), py::arg("useful"));
    m.def(
        "directivity",
        [](const ExcitationGrid &g, const ArrayGeometry &geo, int q, double theta0, const std::string &mode,
           std::size_t points) { return directivity(g, geo, q, theta0, mode_from(mode), points); },
        py::arg("grid"), py::arg("geometry"), py::arg("q"), py::arg("theta0_deg"), py::arg("mode") = "pattern-only",
        py::arg("points") = kDefaultIntegrationPoints);

    m.def(
        "pattern_csv", [](const std::filesystem::path &p) { return report::pattern_csv(report::load_run_config(p)); },
        py::arg("config_path"));
    m.def(
        "metrics_json", [](const std::filesystem::path &p) { return report::metrics_json(report::load_run_config(p)); },
        py::arg("config_path"));
    m.def(
        "compare",
        [](const std::vector<std::filesystem::path> &paths) {
            std::vector<report::RunConfig> configs;
            for (const auto &p : paths)
                configs.push_back(report::load_run_config(p));
            const report::Comparison c = report::compare(configs);
            py::dict d;
            d["table"] = c.table;
            d["csv"] = c.csv;
            d["ordering_holds"] = c.ordering_holds;
            return d;
        },
        py::arg("config_paths"));
    m.def(
        "simulate",
        [](const std::filesystem::path &p) {
            const Scene scene = report::load_scene(p);
            const report::SimulationOutput out = report::simulate(scene);
            py::dict d;
            d["series"] = py::array_t<Complex>(static_cast<py::ssize_t>(out.series.size()), out.series.data());
            d["sample_rate"] = scene.sample_rate();
            d["report_json"] = report::link_report_json(scene, out.link);
            return d;
        },
        py::arg("scene_path"));
}
