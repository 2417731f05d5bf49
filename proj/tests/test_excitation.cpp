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

#include "oracles.hpp"
#include "tmabeam/excitation.hpp"
#include "tmabeam/metrics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tmabeam;

namespace
{

std::vector<double> positions(const ArrayGeometry &g)
{
    return {g.positions().begin(), g.positions().end()};
}

} // namespace

TEST_CASE("rect grid columns")
{
    const ExcitationGrid g = grid_from_rect(RectPulseParams({0.5, 0.5}, {0.0, 0.0}), 2);
    CHECK(g.provenance() == Provenance::rect);
    CHECK(g.column(0) == std::vector<Complex>{0.5, 0.5});
    CHECK(g.column(2) == std::vector<Complex>{0.0, 0.0});
    CHECK(g.column(-2) == std::vector<Complex>{0.0, 0.0});

    const ExcitationGrid s = grid_from_rect(RectPulseParams({0.5, 0.5, 0.5, 0.5}, {0.0, 0.25, 0.5, 0.75}), 3);
    for (std::size_t n = 0; n < 4; ++n)
    {
        const double expect = wrap_phase(-kPi / 2.0 - kTwoPi * static_cast<double>(n) / 4.0);
        CHECK(std::abs(wrap_phase(std::arg(s.at(n, 1)) - expect)) < 1e-12);
        CHECK(std::abs(s.at(n, 1) - oracle::rect_fourier(0.5, 0.25 * static_cast<double>(n), 1)) < 1e-14);
    }
}

TEST_CASE("swc grid structure")
{
    const std::size_t N = 3;
    const SWCParams p(std::vector<double>(N, 1.0), std::vector<std::vector<double>>(N, {0.1, 0.2, 0.2}),
                      std::vector<std::vector<double>>(N, {0.0, 0.0, 0.0}));
    const ExcitationGrid g = grid_from_swc(p, 5);
    CHECK(g.provenance() == Provenance::swc);
    for (std::size_t n = 0; n < N; ++n)
    {
        for (int q = -2; q <= 2; ++q)
            CHECK(std::abs(g.at(n, q)) == doctest::Approx(0.1).epsilon(1e-15));
        for (int q = 3; q <= 5; ++q)
        {
            CHECK(g.at(n, q) == Complex(0.0));
            CHECK(g.at(n, -q) == Complex(0.0));
        }
    }
    CHECK(validate_grid(g, 0.0).ok());
    CHECK_THROWS_AS(grid_from_swc(p, 1), std::invalid_argument);

    const SWCParams ind({1.0}, {{0.2, 0.4, 0.4}}, {{0.0, 0.7, -2.1}});
    const ExcitationGrid gi = grid_from_swc(ind, 2);
    CHECK(std::arg(gi.at(0, 1)) == doctest::Approx(-0.7));
    CHECK(std::arg(gi.at(0, 2)) == doctest::Approx(2.1));
}

TEST_CASE("ssb grid structure")
{
    const SSBParams ones(std::vector<double>(4, 1.0), PhaseMatrix::zeros(4, {1, 2, 3}));
    const ExcitationGrid g = grid_from_ssb(ones, 5);
    CHECK(g.provenance() == Provenance::ssb);
    for (std::size_t n = 0; n < 4; ++n)
    {
        for (int q = 1; q <= 3; ++q)
            CHECK(g.at(n, q) == Complex(1.0));
        for (int q = -5; q <= 0; ++q)
            CHECK(g.at(n, q) == Complex(0.0));
        for (int q = 4; q <= 5; ++q)
            CHECK(g.at(n, q) == Complex(0.0));
    }

    const SSBParams pi({0.2, 0.9}, PhaseMatrix(2, {1}, {kPi, kPi}));
    const ExcitationGrid gp = grid_from_ssb(pi, 1);
    CHECK(std::abs(gp.at(0, 1) - Complex(-0.2)) < 1e-15);
    CHECK(std::abs(gp.at(1, 1) - Complex(-0.9)) < 1e-15);

    CHECK_THROWS_AS(grid_from_ssb(ones, 2), std::invalid_argument);
}

TEST_CASE("ssb grid amplitudes equal the taper and the negative band is empty")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> duty(0.05, 1.0), phase(-10.0, 10.0);
    for (int trial = 0; trial < 20; ++trial)
    {
        const std::size_t N = 7;
        std::vector<double> xi(N), phi(N * 4);
        for (double &x : xi)
            x = duty(rng);
        for (double &f : phi)
            f = phase(rng);
        const ExcitationGrid g = grid_from_ssb(SSBParams(xi, PhaseMatrix(N, {1, 2, 3, 4}, phi)), 8);
        for (std::size_t n = 0; n < N; ++n)
        {
            for (int q = 1; q <= 4; ++q)
                CHECK(std::abs(g.at(n, q)) == doctest::Approx(xi[n]).epsilon(1e-15));
            for (int q = -8; q <= 0; ++q)
                CHECK(g.at(n, q) == Complex(0.0));
        }
    }
}

TEST_CASE("beam plan validation")
{
    CHECK_THROWS_AS(BeamPlan({{1, 60.0}, {1, 70.0}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BeamPlan({{1, 0.0}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BeamPlan({{1, 180.0}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BeamPlan({{-1, 60.0}}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(BeamPlan({{1, 60.0}}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(BeamPlan({{1, 60.0}}, {1.2}), std::invalid_argument);
    const BeamPlan ok({{2, 60.0}, {1, 120.0}}, {1.0, 0.5});
    CHECK(ok.max_harmonic() == 2);
    REQUIRE(ok.find(1) != nullptr);
    CHECK(ok.find(1)->theta_deg == 120.0);
    CHECK(ok.find(3) == nullptr);
}

TEST_CASE("steering phases")
{
    const ArrayGeometry geo = build_uniform_geometry(8, 0.5);
    const std::vector<double> ones(8, 1.0);

    const PhaseMatrix broadside = steering_phases(geo, BeamPlan({{1, 90.0}}, ones), 2);
    for (std::size_t n = 0; n < 8; ++n)
    {
        CHECK(broadside.value(n, 1) == 0.0);
        CHECK(broadside.value(n, 2) == 0.0); // unplanned
    }

    const PhaseMatrix sixty = steering_phases(geo, BeamPlan({{1, 60.0}}, ones), 1);
    for (std::size_t n = 0; n < 8; ++n)
        CHECK(std::abs(wrap_phase(sixty.value(n, 1) - kPi * static_cast<double>(n) / 2.0)) < 1e-12);

    CHECK_THROWS_AS(steering_phases(geo, BeamPlan({{3, 60.0}}, ones), 2), std::invalid_argument);
}

TEST_CASE("steered ssb beams peak at their targets independently")
{
    const ArrayGeometry geo = build_uniform_geometry(20, 0.5);
    const std::vector<double> ones(20, 1.0);
    const BeamPlan plan({{1, 50.0}, {2, 90.0}, {3, 120.0}}, ones);
    const ExcitationGrid g = grid_from_ssb(ssb_params_from_plan(geo, plan, 3), 3);
    for (const Beam &b : plan.beams())
    {
        const double peak = oracle::dense_argmax(g.column(b.harmonic), positions(geo), 0.0, 180.0, 18001);
        CHECK(std::abs(peak - b.theta_deg) <= 0.01);
    }

    // a 60 degree beam on d = lambda/2 also peaks where expected
    const ExcitationGrid g60 = grid_from_ssb(ssb_params_from_plan(geo, BeamPlan({{1, 60.0}}, ones), 1), 1);
    CHECK(std::abs(oracle::dense_argmax(g60.column(1), positions(geo), 0.0, 180.0, 18001) - 60.0) <= 0.01);
}

TEST_CASE("ssb plans reject the fundamental and zero unplanned harmonics")
{
    const ArrayGeometry geo = build_uniform_geometry(4, 0.5);
    const std::vector<double> taper(4, 0.5);
    CHECK_THROWS_AS(ssb_params_from_plan(geo, BeamPlan({{0, 90.0}}, taper), 2), std::invalid_argument);
    const SSBParams p = ssb_params_from_plan(geo, BeamPlan({{2, 70.0}}, taper), 3);
    const ExcitationGrid g = grid_from_ssb(p, 3);
    for (std::size_t n = 0; n < 4; ++n)
    {
        CHECK(g.at(n, 1) == Complex(0.0));
        CHECK(std::abs(g.at(n, 2)) == doctest::Approx(0.5));
        CHECK(g.at(n, 3) == Complex(0.0));
    }
    CHECK_THROWS_AS(ssb_params_from_plan(geo, BeamPlan({{1, 70.0}}, {1.0}), 1), std::invalid_argument);
}

TEST_CASE("delays from phases")
{
    const DelayMatrix d = delays_from_phases(PhaseMatrix(1, {1, 2}, {kPi, kPi}));
    CHECK(d.value(0, 1) == doctest::Approx(0.5));
    CHECK(d.value(0, 2) == doctest::Approx(0.25));

    CHECK_THROWS_AS(delays_from_phases(PhaseMatrix(1, {0, 1}, {0.3, 0.0})), std::invalid_argument);
    CHECK_NOTHROW(delays_from_phases(PhaseMatrix(1, {0, 1}, {0.0, 0.3})));

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> any(-20.0, 20.0);
    const std::size_t N = 16;
    std::vector<double> phi(N * 5);
    for (double &f : phi)
        f = any(rng);
    const PhaseMatrix m(N, {1, 2, 3, 4, 5}, phi);
    const DelayMatrix dm = delays_from_phases(m);
    const PhaseMatrix back = phases_from_delays(dm);
    for (std::size_t n = 0; n < N; ++n)
        for (int q = 1; q <= 5; ++q)
        {
            const double delta = dm.value(n, q);
            CHECK(delta >= 0.0);
            CHECK(delta < 1.0 / q);
            CHECK(std::abs(wrap_phase(back.value(n, q) - m.value(n, q))) < 1e-12);
        }
}

TEST_CASE("gaussian taper")
{
    CHECK(gaussian_taper(1, 2.0 / 3.0) == std::vector<double>{1.0});
    const std::vector<double> t3 = gaussian_taper(3, 2.0 / 3.0);
    CHECK(t3[0] == doctest::Approx(std::exp(-9.0 / 8.0)).epsilon(1e-15));
    CHECK(t3[1] == 1.0);
    CHECK(t3[2] == t3[0]);
    CHECK(t3[0] == doctest::Approx(0.3247).epsilon(1e-4));

    const std::vector<double> t20 = gaussian_taper(20, 2.0 / 3.0);
    for (std::size_t n = 0; n < 20; ++n)
    {
        CHECK(t20[n] == doctest::Approx(t20[19 - n]).epsilon(1e-15));
        CHECK(t20[n] > 0.0);
        CHECK(t20[n] <= 1.0);
    }
    CHECK(t20[0] == doctest::Approx(std::exp(-9.0 / 8.0)).epsilon(1e-15));
    CHECK(*std::min_element(t20.begin(), t20.end()) == t20[0]);

    CHECK_THROWS_AS(gaussian_taper(5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_taper(5, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(gaussian_taper(0, 1.0), std::invalid_argument);
}

TEST_CASE("dc extraction equals the duty cycle")
{
    CHECK(dc_extract(RectPulseParams({0.73}, {0.0}), 0) == 0.73);
    CHECK(dc_extract(RectPulseParams({0.0}, {0.5}), 0) == 0.0);
    for (double delay : {0.0, 0.1, 0.45, 0.99})
        CHECK(dc_extract(RectPulseParams({0.37}, {delay}), 0) == 0.37);
}

TEST_CASE("rect grid phase laws")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const ArrayGeometry geo = build_uniform_geometry(10, 0.5);
    for (int trial = 0; trial < 20; ++trial)
    {
        std::vector<double> duty(10), delay(10);
        for (std::size_t n = 0; n < 10; ++n)
        {
            duty[n] = 0.05 + 0.9 * u01(rng);
            delay[n] = 0.999 * u01(rng);
        }
        const ExcitationGrid g = grid_from_rect(RectPulseParams(duty, delay), 8);
        for (std::size_t n = 0; n < 10; ++n)
        {
            CHECK(g.at(n, 0).imag() == 0.0);
            const double a1 = std::arg(g.at(n, 1));
            for (int q = 2; q <= 8; ++q)
                if (sinc(q * duty[n]) > 1e-9)
                    CHECK(std::abs(wrap_phase(std::arg(g.at(n, q)) - q * a1)) < 1e-9);
        }
        const double peak = oracle::dense_argmax(g.column(0), positions(geo), 0.0, 180.0, 1801);
        CHECK(peak == 90.0);
    }
}

TEST_CASE("rect grid with equal delays peaks at broadside on every harmonic")
{
    const ArrayGeometry geo = build_uniform_geometry(12, 0.5);
    const std::vector<double> duty = gaussian_taper(12, 0.5);
    const ExcitationGrid g = grid_from_rect(RectPulseParams(duty, std::vector<double>(12, 0.3)), 4);
    for (int q = -4; q <= 4; ++q)
    {
        if (q != 0 && std::abs(g.at(0, q)) < 1e-12)
            continue;
        CHECK(oracle::dense_argmax(g.column(q), positions(geo), 0.0, 180.0, 1801) == 90.0);
    }
}

TEST_CASE("rect plan steers the lead harmonic and keeps the fundamental at broadside")
{
    const ArrayGeometry geo = build_uniform_geometry(20, 0.5);
    const std::vector<double> taper(20, 0.2);
    const BeamPlan plan({{0, 90.0}, {1, 75.52248781}, {2, 60.0}}, taper);
    const ExcitationGrid g = grid_from_rect(rect_params_from_plan(geo, plan), 3);
    CHECK(std::abs(oracle::dense_argmax(g.column(1), positions(geo), 0.0, 180.0, 18001) - 75.52) <= 0.01);
    CHECK(std::abs(oracle::dense_argmax(g.column(2), positions(geo), 0.0, 180.0, 18001) - 60.0) <= 0.01);
    CHECK(oracle::dense_argmax(g.column(0), positions(geo), 0.0, 180.0, 1801) == 90.0);

    CHECK_THROWS_AS(rect_params_from_plan(geo, BeamPlan({{0, 60.0}}, taper)), std::invalid_argument);
}

TEST_CASE("swc plan steers each harmonic independently")
{
    const ArrayGeometry geo = build_uniform_geometry(20, 0.5);
    const std::vector<double> taper = gaussian_taper(20, 2.0 / 3.0);
    const std::vector<double> weights = {0.1, 0.2, 0.2};
    const BeamPlan plan({{0, 90.0}, {1, 110.0}, {2, 45.0}}, taper);
    const ExcitationGrid g = grid_from_swc(swc_params_from_plan(geo, plan, weights), 2);
    CHECK(std::abs(oracle::dense_argmax(g.column(1), positions(geo), 0.0, 180.0, 18001) - 110.0) <= 0.01);
    CHECK(std::abs(oracle::dense_argmax(g.column(2), positions(geo), 0.0, 180.0, 18001) - 45.0) <= 0.01);
    CHECK(std::abs(oracle::dense_argmax(g.column(-1), positions(geo), 0.0, 180.0, 18001) - 70.0) <= 0.01);
    CHECK_THROWS_AS(swc_params_from_plan(geo, BeamPlan({{3, 60.0}}, taper), weights), std::invalid_argument);
}
