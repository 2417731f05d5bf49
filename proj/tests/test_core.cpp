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

#include "tmabeam/core.hpp"
#include "tmabeam/excitation.hpp"
#include "tmabeam/pulse.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace tmabeam;

TEST_CASE("uniform geometry positions")
{
    const ArrayGeometry one = build_uniform_geometry(1, 0.5);
    REQUIRE(one.size() == 1);
    CHECK(one.position(0) == 0.0);

    const ArrayGeometry four = build_uniform_geometry(4, 0.5);
    REQUIRE(four.size() == 4);
    const double expect[] = {0.0, 0.5, 1.0, 1.5};
    for (std::size_t n = 0; n < 4; ++n)
        CHECK(four.position(n) == expect[n]);

    const ArrayGeometry twenty = build_uniform_geometry(20, 0.5);
    CHECK(twenty.size() == 20);
    CHECK(twenty.position(19) == 9.5);
}

TEST_CASE("uniform geometry rejects non-positive inputs")
{
    CHECK_THROWS_AS(build_uniform_geometry(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_geometry(-3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_geometry(4, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_uniform_geometry(4, -0.5), std::invalid_argument);
}

TEST_CASE("geometry positions must be finite and strictly increasing")
{
    CHECK_THROWS_AS(ArrayGeometry({}), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry({0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry({1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry({0.0, std::numeric_limits<double>::infinity()}), std::invalid_argument);
    CHECK_THROWS_AS(ArrayGeometry({std::nan(""), 1.0}), std::invalid_argument);
    CHECK_NOTHROW(ArrayGeometry({-1.0, 0.25, 3.0}));
}

TEST_CASE("harmonic band requires 1 <= L <= Q")
{
    CHECK_NOTHROW(HarmonicBand(3, 3));
    CHECK_NOTHROW(HarmonicBand(1, 50));
    CHECK_THROWS_AS(HarmonicBand(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(HarmonicBand(4, 3), std::invalid_argument);
}

TEST_CASE("sinc and phase helpers")
{
    CHECK(sinc(0.0) == 1.0);
    for (int k = 1; k <= 50; ++k)
    {
        CHECK(sinc(static_cast<double>(k)) == 0.0);
        CHECK(sinc(static_cast<double>(-k)) == 0.0);
    }
    CHECK(sinc(0.5) == doctest::Approx(2.0 / kPi).epsilon(1e-15));

    CHECK(wrap_phase(kPi) == doctest::Approx(kPi));
    CHECK(wrap_phase(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_phase(3.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> any(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i)
    {
        const double w = wrap_phase(any(rng));
        CHECK(w > -kPi);
        CHECK(w <= kPi);
    }

    CHECK(direction_cosine(90.0) == 0.0);
    CHECK(direction_cosine(0.0) == 1.0);
    CHECK(direction_cosine(180.0) == -1.0);
    CHECK(direction_cosine(60.0) == doctest::Approx(0.5).epsilon(1e-15));

    const Complex p = unit_phasor_turns(1e6 + 0.25);
    CHECK(std::abs(p - Complex(0.0, 1.0)) < 1e-9);
}

TEST_CASE("harmonic tables")
{
    const PhaseMatrix m(2, {1, 3}, {0.1, 0.2, 0.3, 0.4});
    CHECK(m.rows() == 2);
    CHECK(m.columns() == 2);
    CHECK(m.column_of(3) == 1);
    CHECK(m.column_of(2) == -1);
    CHECK(m.value(1, 1) == 0.3);
    CHECK(m.value(0, 3) == 0.2);
    CHECK_THROWS_AS(m.value(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(PhaseMatrix(2, {1, 1}, {0, 0, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(PhaseMatrix(2, {1}, {0.0}), std::invalid_argument);
    CHECK(PhaseMatrix::zeros(3, {1, 2}).values().size() == 6);
}

TEST_CASE("excitation grid access and band checks")
{
    std::vector<Complex> v(2 * 5);
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = Complex(static_cast<double>(i) / 10.0, 0.0);
    const ExcitationGrid g(2, 2, Provenance::rect, v);
    CHECK(g.at(0, -2) == v[0]);
    CHECK(g.at(1, 2) == v[9]);
    CHECK(g.column(0) == std::vector<Complex>{v[2], v[7]});
    CHECK_THROWS_AS(g.at(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(g.at(0, -3), std::invalid_argument);
    CHECK(g.with_entry(1, 0, 0.5).at(1, 0) == Complex(0.5));
    CHECK(g.at(1, 0) == v[7]);
    CHECK(g.scaled(2.0).at(1, 2) == 2.0 * v[9]);

    std::vector<Complex> bad(v);
    bad[3] = Complex(std::nan(""), 0.0);
    CHECK_THROWS_AS(ExcitationGrid(2, 2, Provenance::rect, bad), std::invalid_argument);
    CHECK_THROWS_AS(ExcitationGrid(2, 2, Provenance::rect, std::vector<Complex>(9)), std::invalid_argument);
}

TEST_CASE("validate_grid on a rectangular-pulse grid")
{
    const RectPulseParams p({0.3, 0.5, 0.8}, {0.1, 0.6, 0.95});
    const GridDiagnostics d = validate_grid(grid_from_rect(p, 40));
    CHECK(d.ok());
    CHECK(d.max_conjugate_deviation == 0.0);
    CHECK(d.max_magnitude <= 1.0);
}

TEST_CASE("validate_grid on an SSB grid")
{
    const SSBParams p({0.4, 1.0}, PhaseMatrix(2, {1, 2, 3}, {0.1, 0.2, 0.3, -1.0, 2.0, 3.0}));
    const GridDiagnostics d = validate_grid(grid_from_ssb(p, 6));
    CHECK(d.ok());
    CHECK(d.max_negative_band_magnitude == 0.0);
}

TEST_CASE("validate_grid flags a corrupted entry")
{
    const RectPulseParams p({0.5, 0.5}, {0.0, 0.25});
    const ExcitationGrid g = grid_from_rect(p, 4).with_entry(1, 2, Complex(0.2, 0.1));
    const GridDiagnostics d = validate_grid(g);
    REQUIRE_FALSE(d.ok());
    CHECK(d.max_conjugate_deviation > 0.1);
    bool found = false;
    for (const GridViolation &v : d.violations)
        if (v.kind == GridViolation::Kind::conjugate_symmetry && v.element == 1 && std::abs(v.harmonic) == 2)
            found = true;
    CHECK(found);

    const SSBParams s({1.0}, PhaseMatrix(1, {1}, {0.0}));
    const GridDiagnostics ds = validate_grid(grid_from_ssb(s, 2).with_entry(0, -1, Complex(0.0, 1e-3)));
    REQUIRE_FALSE(ds.ok());
    CHECK(ds.max_negative_band_magnitude == doctest::Approx(1e-3));
    CHECK(ds.violations.front().kind == GridViolation::Kind::negative_band);
    CHECK(ds.violations.front().harmonic == -1);

    const GridDiagnostics dm = validate_grid(grid_from_ssb(s, 2).with_entry(0, 1, Complex(1.5, 0.0)));
    REQUIRE_FALSE(dm.ok());
    CHECK(dm.max_magnitude == 1.5);
}

TEST_CASE("conjugate symmetry of real-pulse grids holds exactly for random parameters")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial)
    {
        std::vector<double> duty(8), delay(8);
        for (std::size_t n = 0; n < 8; ++n)
        {
            duty[n] = u01(rng);
            delay[n] = u01(rng) * 0.999;
        }
        const ExcitationGrid g = grid_from_rect(RectPulseParams(duty, delay), 30);
        CHECK(validate_grid(g, 0.0).max_conjugate_deviation == 0.0);
    }
}
