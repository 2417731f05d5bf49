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

#include "tmabeam/core.hpp"
#include "tmabeam/pulse.hpp"

#include <vector>

namespace tmabeam
{

// I_nq = G_nq for |q| <= Q.
ExcitationGrid grid_from_rect(const RectPulseParams &params, int band_limit);

// Conjugate-symmetric grid, zero for |q| > L. Requires L <= Q.
ExcitationGrid grid_from_swc(const SWCParams &params, int band_limit);

// I_nq = duty_n exp(-j Phi_nq) on active q in [1, L]; exactly zero elsewhere.
ExcitationGrid grid_from_ssb(const SSBParams &params, int band_limit);

struct Beam
{
    int harmonic;     // q
    double theta_deg; // target, strictly inside (0, 180)
};

// Beams to form and the static taper (duty cycles). Harmonic orders are
// distinct and non-negative; q = 0 is accepted only so that switched and SWC
// plans can name their fundamental beam, which cannot be steered.
class BeamPlan
{
  public:
    BeamPlan(std::vector<Beam> beams, std::vector<double> taper);

    std::span<const Beam> beams() const { return beams_; }
    std::span<const double> taper() const { return taper_; }
    const Beam *find(int q) const;
    // Highest planned harmonic, 0 for an empty plan.
    int max_harmonic() const;

  private:
    std::vector<Beam> beams_;
    std::vector<double> taper_;
};

// Phi_nq = 2 pi z_n cos(theta_q), wrapped to (-pi, pi], for every planned
// harmonic; columns for q = 1..L are always present and zero when unplanned.
// A planned q = 0 adds a q = 0 column.
PhaseMatrix steering_phases(const ArrayGeometry &geometry, const BeamPlan &plan, int exploited_order);

// delta_nq = Phi_nq / (2 pi q) reduced into [0, 1/q). Nonzero phase on a
// q <= 0 column is rejected.
DelayMatrix delays_from_phases(const PhaseMatrix &phases);

// Inverse map: Phi_nq = wrap(q omega0 delta_nq).
PhaseMatrix phases_from_delays(const DelayMatrix &delays);

// exp(-x^2 / (2 sigma^2)) over x in [-1, 1] spanning the aperture; peak 1.
std::vector<double> gaussian_taper(int n_elements, double sigma);

// DC component of the rectangular pulse, G_n0 = duty_n.
double dc_extract(const RectPulseParams &params, std::size_t n);

// Architecture builders driven by a BeamPlan.

// SSB: duty from the taper, phases steer every planned harmonic; harmonics in
// 1..L without a beam are inactive.
SSBParams ssb_params_from_plan(const ArrayGeometry &geometry, const BeamPlan &plan, int exploited_order);

// SWC: identical cosine weights a_0..a_L on every element, tapered by the plan;
// each planned harmonic k >= 1 gets its own steering phase.
SWCParams swc_params_from_plan(const ArrayGeometry &geometry, const BeamPlan &plan, std::span<const double> weights);

// Switched pulses: duty from the taper; delays steer the lowest planned
// positive harmonic. Higher harmonics follow from phase proportionality.
RectPulseParams rect_params_from_plan(const ArrayGeometry &geometry, const BeamPlan &plan);

} // namespace tmabeam
