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
#include "tmabeam/excitation.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace tmabeam
{

// Raised when the total received power is zero.
class UndefinedEfficiencyError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// F_q(theta) = sum_n I_nq exp(j k z_n cos theta), the exp(j w_q t) factor
// dropped. theta in degrees.
Complex array_factor(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q, double theta_deg);

// Uniform grid over [0, 180] with spacing at most step_deg; both ends included.
std::vector<double> angle_grid(double step_deg);

struct HarmonicPattern
{
    int harmonic;
    std::vector<double> theta_deg;
    std::vector<Complex> values;
};

HarmonicPattern evaluate_pattern(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q,
                                 std::span<const double> theta_deg);

// 10 log10(|F_q|^2 / reference). Without a reference the pattern is normalized
// to its own maximum. Zero samples (or an all-zero column) map to -inf.
std::vector<double> power_pattern(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q,
                                  std::span<const double> theta_deg, std::optional<double> reference_power = {});

using PowerMap = std::map<int, double>;

// p_q = sum_n |I_nq|^2 for every q in the band.
PowerMap harmonic_powers(const ExcitationGrid &grid);

// eta = sum_{q in useful} p_q / sum_q p_q.
double efficiency(const PowerMap &powers, const std::set<int> &useful);

enum class DirectivityMode
{
    pattern_only,
    total_power
};

inline constexpr std::size_t kDefaultIntegrationPoints = 2001;

// int_0^pi |F_q(theta)|^2 sin(theta) d theta by composite Simpson.
// points must be odd and >= 2001 (even counts are bumped by one).
double radiated_integral(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q,
                         std::size_t points = kDefaultIntegrationPoints);

// Same integral summed over every harmonic of the grid band.
double total_radiated_integral(const ExcitationGrid &grid, const ArrayGeometry &geometry,
                               std::size_t points = kDefaultIntegrationPoints);

// D = 2 |F_q(theta_0)|^2 / denominator, in dBi. The denominator is the q
// pattern integral (pattern_only) or the all-harmonic integral (total_power).
double directivity(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q, double theta0_deg,
                   DirectivityMode mode, std::size_t points = kDefaultIntegrationPoints);

struct PatternStats
{
    double peak_deg;                     // parabolic refinement of the sampled argmax
    double peak_power;                   // |F|^2 at the sampled argmax
    std::optional<double> sll_db;        // highest local maximum outside the main lobe
    std::optional<double> beamwidth_deg; // -3 dB width, linear interpolation
};

// Throws std::invalid_argument for an all-zero pattern.
PatternStats pattern_stats(const HarmonicPattern &pattern);

// max over theta of | |F_q(theta)|^2 - |F_{-q}(180 - theta)|^2 |.
double specular_deviation(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q,
                          std::span<const double> theta_deg);

struct BeamMetrics
{
    int harmonic;
    double target_deg;
    PatternStats stats;
    double directivity_pattern_dbi;
    double directivity_total_dbi;
};

struct MetricsReport
{
    PowerMap p_q;
    std::set<int> useful;
    double eta;
    std::vector<BeamMetrics> beams;
};

// Figures of merit for every planned beam plus the efficiency over `useful`.
MetricsReport compute_metrics(const ExcitationGrid &grid, const ArrayGeometry &geometry, std::span<const Beam> beams,
                              const std::set<int> &useful, std::span<const double> theta_deg,
                              std::size_t points = kDefaultIntegrationPoints);

} // namespace tmabeam
