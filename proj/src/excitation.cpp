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

#include <algorithm>
#include <cmath>
#include <set>

namespace tmabeam
{

namespace
{

double fractional_part(double t)
{
    double f = t - std::floor(t);
    return f >= 1.0 ? 0.0 : f;
}

template <class Coeff>
ExcitationGrid build_grid(std::size_t rows, int band_limit, Provenance provenance, Coeff &&coeff)
{
    if (band_limit < 0)
        throw std::invalid_argument("grid band limit must be non-negative");
    const std::size_t cols = static_cast<std::size_t>(2 * band_limit + 1);
    std::vector<Complex> values(rows * cols);
    for (std::size_t n = 0; n < rows; ++n)
        for (int q = -band_limit; q <= band_limit; ++q)
            values[n * cols + static_cast<std::size_t>(q + band_limit)] = coeff(n, q);
    return ExcitationGrid(rows, band_limit, provenance, std::move(values));
}

void check_taper_size(const ArrayGeometry &geometry, const BeamPlan &plan)
{
    if (plan.taper().size() != geometry.size())
        throw std::invalid_argument("beam plan taper length does not match the array size");
}

void check_fundamental(const BeamPlan &plan)
{
    if (const Beam *b = plan.find(0); b && b->theta_deg != 90.0)
        throw std::invalid_argument("the q = 0 beam has zero excitation phases and cannot be steered off broadside");
}

} // namespace

ExcitationGrid grid_from_rect(const RectPulseParams &params, int band_limit)
{
    return build_grid(params.size(), band_limit, Provenance::rect,
                      [&](std::size_t n, int q) { return rect_coeff(params, n, q); });
}

ExcitationGrid grid_from_swc(const SWCParams &params, int band_limit)
{
    if (params.order() > band_limit)
        throw std::invalid_argument("grid_from_swc: cosine order exceeds the band limit");
    return build_grid(params.size(), band_limit, Provenance::swc,
                      [&](std::size_t n, int q) { return swc_coeff(params, n, q); });
}

ExcitationGrid grid_from_ssb(const SSBParams &params, int band_limit)
{
    HarmonicBand band(params.order(), band_limit);
    return build_grid(params.size(), band.band_limit, Provenance::ssb, [&](std::size_t n, int q) -> Complex {
        if (q < 1 || q > params.order() || !params.active(q))
            return 0.0;
        return std::polar(params.duty(n), -params.phase(n, q));
    });
}

// ---- BeamPlan ------------------------------------------------------------

BeamPlan::BeamPlan(std::vector<Beam> beams, std::vector<double> taper) : beams_(std::move(beams)), taper_(std::move(taper))
{
    std::set<int> seen;
    for (const Beam &b : beams_)
    {
        if (b.harmonic < 0)
            throw std::invalid_argument("BeamPlan: harmonic orders must be non-negative");
        if (!seen.insert(b.harmonic).second)
            throw std::invalid_argument("BeamPlan: duplicate harmonic " + std::to_string(b.harmonic));
        if (!(b.theta_deg > 0.0 && b.theta_deg < 180.0))
            throw std::invalid_argument("BeamPlan: target angles must lie strictly inside (0, 180) degrees");
    }
    for (double t : taper_)
        if (!std::isfinite(t) || t <= 0.0 || t > 1.0)
            throw std::invalid_argument("BeamPlan: taper values must lie in (0, 1]");
}

const Beam *BeamPlan::find(int q) const
{
    auto it = std::find_if(beams_.begin(), beams_.end(), [q](const Beam &b) { return b.harmonic == q; });
    return it == beams_.end() ? nullptr : &*it;
}

int BeamPlan::max_harmonic() const
{
    int m = 0;
    for (const Beam &b : beams_)
        m = std::max(m, b.harmonic);
    return m;
}

// ---- steering ------------------------------------------------------------

PhaseMatrix steering_phases(const ArrayGeometry &geometry, const BeamPlan &plan, int exploited_order)
{
    if (exploited_order < 1)
        throw std::invalid_argument("steering_phases: L must be positive");
    if (plan.max_harmonic() > exploited_order)
        throw std::invalid_argument("steering_phases: planned harmonic exceeds L");

    std::vector<int> orders;
    if (plan.find(0))
        orders.push_back(0);
    for (int q = 1; q <= exploited_order; ++q)
        orders.push_back(q);

    const std::size_t N = geometry.size();
    std::vector<double> values(N * orders.size(), 0.0);
    for (std::size_t c = 0; c < orders.size(); ++c)
    {
        const Beam *beam = plan.find(orders[c]);
        if (!beam)
            continue;
        const double u = direction_cosine(beam->theta_deg);
        for (std::size_t n = 0; n < N; ++n)
            values[n * orders.size() + c] = wrap_phase(kTwoPi * geometry.position(n) * u);
    }
    return PhaseMatrix(N, std::move(orders), std::move(values));
}

DelayMatrix delays_from_phases(const PhaseMatrix &phases)
{
    const std::size_t cols = phases.columns();
    std::vector<double> delays(phases.values().size(), 0.0);
    for (std::size_t c = 0; c < cols; ++c)
    {
        const int q = phases.orders()[c];
        for (std::size_t n = 0; n < phases.rows(); ++n)
        {
            const double phi = phases.at(n, c);
            if (q <= 0)
            {
                if (wrap_phase(phi) != 0.0)
                    throw std::invalid_argument("delays_from_phases: nonzero phase requested at harmonic " +
                                                std::to_string(q));
                continue;
            }
            delays[n * cols + c] = fractional_part(phi / kTwoPi) / q;
        }
    }
    return DelayMatrix(phases.rows(), std::vector<int>(phases.orders().begin(), phases.orders().end()),
                       std::move(delays));
}

PhaseMatrix phases_from_delays(const DelayMatrix &delays)
{
    const std::size_t cols = delays.columns();
    std::vector<double> phases(delays.values().size());
    for (std::size_t n = 0; n < delays.rows(); ++n)
        for (std::size_t c = 0; c < cols; ++c)
            phases[n * cols + c] = wrap_phase(delays.orders()[c] * kOmega0 * delays.at(n, c));
    return PhaseMatrix(delays.rows(), std::vector<int>(delays.orders().begin(), delays.orders().end()),
                       std::move(phases));
}

std::vector<double> gaussian_taper(int n_elements, double sigma)
{
    if (n_elements < 1)
        throw std::invalid_argument("gaussian_taper: N must be positive");
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("gaussian_taper: sigma must be positive");

    std::vector<double> taper(static_cast<std::size_t>(n_elements));
    for (int n = 0; n < n_elements; ++n)
    {
        const double x = n_elements == 1 ? 0.0 : (2.0 * n - (n_elements - 1)) / (n_elements - 1);
        taper[static_cast<std::size_t>(n)] = std::exp(-x * x / (2.0 * sigma * sigma));
    }
    return taper;
}

double dc_extract(const RectPulseParams &params, std::size_t n)
{
    return rect_coeff(params, n, 0).real();
}

// ---- architecture builders -----------------------------------------------

SSBParams ssb_params_from_plan(const ArrayGeometry &geometry, const BeamPlan &plan, int exploited_order)
{
    check_taper_size(geometry, plan);
    if (plan.find(0))
        throw std::invalid_argument("SSB plans cannot use q = 0: the fundamental is removed");

    const PhaseMatrix all = steering_phases(geometry, plan, exploited_order);
    std::vector<bool> active(static_cast<std::size_t>(exploited_order));
    for (int q = 1; q <= exploited_order; ++q)
        active[static_cast<std::size_t>(q - 1)] = plan.find(q) != nullptr;
    return SSBParams(std::vector<double>(plan.taper().begin(), plan.taper().end()), all, std::move(active));
}

SWCParams swc_params_from_plan(const ArrayGeometry &geometry, const BeamPlan &plan, std::span<const double> weights)
{
    check_taper_size(geometry, plan);
    check_fundamental(plan);
    if (weights.empty())
        throw std::invalid_argument("swc_params_from_plan: at least the DC weight is required");
    const int L = static_cast<int>(weights.size()) - 1;
    if (plan.max_harmonic() > L)
        throw std::invalid_argument("swc_params_from_plan: planned harmonic exceeds the cosine order");

    const std::size_t N = geometry.size();
    std::vector<std::vector<double>> phases(N, std::vector<double>(weights.size(), 0.0));
    for (const Beam &b : plan.beams())
    {
        if (b.harmonic == 0)
            continue;
        const double u = direction_cosine(b.theta_deg);
        for (std::size_t n = 0; n < N; ++n)
            phases[n][static_cast<std::size_t>(b.harmonic)] = wrap_phase(kTwoPi * geometry.position(n) * u);
    }
    return SWCParams(std::vector<double>(plan.taper().begin(), plan.taper().end()),
                     std::vector<std::vector<double>>(N, std::vector<double>(weights.begin(), weights.end())),
                     std::move(phases));
}

RectPulseParams rect_params_from_plan(const ArrayGeometry &geometry, const BeamPlan &plan)
{
    check_taper_size(geometry, plan);
    check_fundamental(plan);

    const Beam *lead = nullptr;
    for (const Beam &b : plan.beams())
        if (b.harmonic > 0 && (!lead || b.harmonic < lead->harmonic))
            lead = &b;

    // arg G_nq = -2 pi q (delay + duty/2); pick it so that harmonic q_lead
    // peaks at its target, i.e. delay + duty/2 = z_n cos(theta) / q_lead (mod 1).
    const double slope = lead ? direction_cosine(lead->theta_deg) / lead->harmonic : 0.0;
    const std::size_t N = geometry.size();
    std::vector<double> duty(plan.taper().begin(), plan.taper().end());
    std::vector<double> delay(N);
    for (std::size_t n = 0; n < N; ++n)
        delay[n] = fractional_part(geometry.position(n) * slope - duty[n] / 2.0);
    return RectPulseParams(std::move(duty), std::move(delay));
}

} // namespace tmabeam
