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

#include "tmabeam/metrics.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tmabeam
{

namespace
{

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

void check_band(const ExcitationGrid &grid, int q)
{
    if (!grid.in_band(q))
        throw std::invalid_argument("harmonic " + std::to_string(q) + " is outside the grid band");
}

Complex factor_at(std::span<const Complex> column, const ArrayGeometry &geometry, double u)
{
    Complex sum = 0.0;
    for (std::size_t n = 0; n < column.size(); ++n)
        sum += column[n] * unit_phasor_turns(geometry.position(n) * u);
    return sum;
}

std::size_t simpson_points(std::size_t points)
{
    if (points < kDefaultIntegrationPoints)
        throw std::invalid_argument("Simpson integration needs at least 2001 points");
    return points % 2 == 1 ? points : points + 1;
}

double simpson_weight(std::size_t i, std::size_t points)
{
    if (i == 0 || i + 1 == points)
        return 1.0;
    return i % 2 == 1 ? 4.0 : 2.0;
}

double to_dbi(double linear)
{
    return 10.0 * std::log10(linear);
}

} // namespace

Complex array_factor(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q, double theta_deg)
{
    check_band(grid, q);
    if (grid.n_elements() != geometry.size())
        throw std::invalid_argument("array_factor: grid and geometry element counts differ");
    const std::vector<Complex> column = grid.column(q);
    return factor_at(column, geometry, direction_cosine(theta_deg));
}

std::vector<double> angle_grid(double step_deg)
{
    if (!(step_deg > 0.0) || step_deg > 180.0)
        throw std::invalid_argument("angle_grid: step must lie in (0, 180] degrees");
    const auto intervals = static_cast<std::size_t>(std::ceil(180.0 / step_deg - 1e-9));
    std::vector<double> theta(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i)
        theta[i] = 180.0 * static_cast<double>(i) / static_cast<double>(intervals);
    return theta;
}

HarmonicPattern evaluate_pattern(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q,
                                 std::span<const double> theta_deg)
{
    check_band(grid, q);
    if (grid.n_elements() != geometry.size())
        throw std::invalid_argument("evaluate_pattern: grid and geometry element counts differ");
    for (std::size_t i = 0; i < theta_deg.size(); ++i)
    {
        if (!(theta_deg[i] >= 0.0 && theta_deg[i] <= 180.0))
            throw std::invalid_argument("evaluate_pattern: angles must lie in [0, 180]");
        if (i > 0 && !(theta_deg[i] > theta_deg[i - 1]))
            throw std::invalid_argument("evaluate_pattern: angle grid must be strictly increasing");
    }

    HarmonicPattern pattern{q, std::vector<double>(theta_deg.begin(), theta_deg.end()),
                            std::vector<Complex>(theta_deg.size())};
    const std::vector<Complex> column = grid.column(q);
    detail::parallel_for(theta_deg.size(), [&](std::size_t i) {
        pattern.values[i] = factor_at(column, geometry, direction_cosine(theta_deg[i]));
    });
    return pattern;
}

std::vector<double> power_pattern(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q,
                                  std::span<const double> theta_deg, std::optional<double> reference_power)
{
    const HarmonicPattern pattern = evaluate_pattern(grid, geometry, q, theta_deg);
    std::vector<double> power(pattern.values.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < power.size(); ++i)
    {
        power[i] = std::norm(pattern.values[i]);
        peak = std::max(peak, power[i]);
    }
    const double ref = reference_power.value_or(peak);

    std::vector<double> db(power.size(), kMinusInf);
    if (ref <= 0.0)
        return db;
    for (std::size_t i = 0; i < power.size(); ++i)
        if (power[i] > 0.0)
            db[i] = 10.0 * std::log10(power[i] / ref);
    return db;
}

PowerMap harmonic_powers(const ExcitationGrid &grid)
{
    PowerMap p;
    const int Q = grid.band_limit();
    for (int q = -Q; q <= Q; ++q)
    {
        double sum = 0.0;
        for (std::size_t n = 0; n < grid.n_elements(); ++n)
            sum += std::norm(grid.at(n, q));
        p[q] = sum;
    }
    return p;
}

double efficiency(const PowerMap &powers, const std::set<int> &useful)
{
    double total = 0.0;
    double used = 0.0;
    for (const auto &[q, p] : powers)
    {
        total += p;
        if (useful.count(q))
            used += p;
    }
    if (!(total > 0.0))
        throw UndefinedEfficiencyError("efficiency: total received power is zero");
    return std::clamp(used / total, 0.0, 1.0);
}

double radiated_integral(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q, std::size_t points)
{
    check_band(grid, q);
    const std::size_t P = simpson_points(points);
    const std::vector<Complex> column = grid.column(q);
    const double h = kPi / static_cast<double>(P - 1);

    std::vector<double> f(P);
    detail::parallel_for(P, [&](std::size_t i) {
        const double theta = h * static_cast<double>(i);
        f[i] = std::norm(factor_at(column, geometry, std::cos(theta))) * std::sin(theta);
    });
    double sum = 0.0;
    for (std::size_t i = 0; i < P; ++i)
        sum += simpson_weight(i, P) * f[i];
    return sum * h / 3.0;
}

double total_radiated_integral(const ExcitationGrid &grid, const ArrayGeometry &geometry, std::size_t points)
{
    const std::size_t P = simpson_points(points);
    const std::size_t N = geometry.size();
    if (grid.n_elements() != N)
        throw std::invalid_argument("total_radiated_integral: grid and geometry element counts differ");
    const double h = kPi / static_cast<double>(P - 1);

    std::vector<Complex> phasor(P * N);
    std::vector<double> jacobian(P);
    detail::parallel_for(P, [&](std::size_t i) {
        const double theta = h * static_cast<double>(i);
        const double u = std::cos(theta);
        jacobian[i] = std::sin(theta) * simpson_weight(i, P);
        for (std::size_t n = 0; n < N; ++n)
            phasor[i * N + n] = unit_phasor_turns(geometry.position(n) * u);
    });

    const int Q = grid.band_limit();
    std::vector<double> per_harmonic(static_cast<std::size_t>(2 * Q + 1), 0.0);
    detail::parallel_for(
        per_harmonic.size(),
        [&](std::size_t c) {
            const std::vector<Complex> column = grid.column(static_cast<int>(c) - Q);
            if (std::all_of(column.begin(), column.end(), [](const Complex &v) { return v == 0.0; }))
                return;
            double sum = 0.0;
            for (std::size_t i = 0; i < P; ++i)
            {
                Complex F = 0.0;
                for (std::size_t n = 0; n < N; ++n)
                    F += column[n] * phasor[i * N + n];
                sum += jacobian[i] * std::norm(F);
            }
            per_harmonic[c] = sum * h / 3.0;
        },
        1);

    double total = 0.0;
    for (double v : per_harmonic)
        total += v;
    return total;
}

double directivity(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q, double theta0_deg,
                   DirectivityMode mode, std::size_t points)
{
    const double peak = std::norm(array_factor(grid, geometry, q, theta0_deg));
    if (!(peak > 0.0))
        throw std::invalid_argument("directivity: pattern is zero at the evaluation angle");
    const double denom = mode == DirectivityMode::pattern_only ? radiated_integral(grid, geometry, q, points)
                                                               : total_radiated_integral(grid, geometry, points);
    if (!(denom > 0.0))
        throw std::invalid_argument("directivity: zero radiated power");
    return to_dbi(2.0 * peak / denom);
}

PatternStats pattern_stats(const HarmonicPattern &pattern)
{
    const std::vector<double> &x = pattern.theta_deg;
    const std::size_t K = pattern.values.size();
    if (K == 0 || x.size() != K)
        throw std::invalid_argument("pattern_stats: empty or inconsistent pattern");

    std::vector<double> p(K);
    for (std::size_t i = 0; i < K; ++i)
        p[i] = std::norm(pattern.values[i]);
    const std::size_t ipk = static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
    const double peak = p[ipk];
    if (!(peak > 0.0))
        throw std::invalid_argument("pattern_stats: pattern is identically zero");

    PatternStats stats{x[ipk], peak, std::nullopt, std::nullopt};

    // Vertex of the parabola through the three samples around the argmax.
    if (ipk > 0 && ipk + 1 < K)
    {
        const double x0 = x[ipk - 1], x1 = x[ipk], x2 = x[ipk + 1];
        const double y0 = p[ipk - 1], y1 = p[ipk], y2 = p[ipk + 1];
        const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
        const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
        const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
        if (a < 0.0)
            stats.peak_deg = std::clamp(-b / (2.0 * a), x0, x2);
    }

    // Main lobe spans down to the first local minimum on either side.
    std::size_t left = ipk;
    while (left > 0 && p[left - 1] <= p[left])
        --left;
    std::size_t right = ipk;
    while (right + 1 < K && p[right + 1] <= p[right])
        ++right;

    double side = 0.0;
    bool found = false;
    for (std::size_t j = 0; j < K; ++j)
    {
        if (j >= left && j <= right)
            continue;
        const bool ge_left = j == 0 || p[j] >= p[j - 1];
        const bool ge_right = j + 1 == K || p[j] >= p[j + 1];
        if (ge_left && ge_right && p[j] > 0.0)
        {
            side = std::max(side, p[j]);
            found = true;
        }
    }
    if (found)
        stats.sll_db = 10.0 * std::log10(side / peak);

    // -3 dB crossings, interpolated in dB.
    const double half_db = -3.0;
    auto rel_db = [&](std::size_t i) { return p[i] > 0.0 ? 10.0 * std::log10(p[i] / peak) : -400.0; };
    std::optional<double> lo, hi;
    for (std::size_t i = ipk; i > 0; --i)
    {
        if (rel_db(i - 1) < half_db)
        {
            const double d0 = rel_db(i - 1), d1 = rel_db(i);
            lo = x[i - 1] + (half_db - d0) / (d1 - d0) * (x[i] - x[i - 1]);
            break;
        }
    }
    for (std::size_t i = ipk; i + 1 < K; ++i)
    {
        if (rel_db(i + 1) < half_db)
        {
            const double d0 = rel_db(i), d1 = rel_db(i + 1);
            hi = x[i] + (half_db - d0) / (d1 - d0) * (x[i + 1] - x[i]);
            break;
        }
    }
    if (lo && hi)
        stats.beamwidth_deg = *hi - *lo;
    return stats;
}

double specular_deviation(const ExcitationGrid &grid, const ArrayGeometry &geometry, int q,
                          std::span<const double> theta_deg)
{
    check_band(grid, q);
    check_band(grid, -q);
    const std::vector<Complex> pos = grid.column(q);
    const std::vector<Complex> neg = grid.column(-q);
    double worst = 0.0;
    for (double theta : theta_deg)
    {
        const double u = direction_cosine(theta);
        // cos(180 - theta) = -cos(theta)
        const double d = std::norm(factor_at(pos, geometry, u)) - std::norm(factor_at(neg, geometry, -u));
        worst = std::max(worst, std::abs(d));
    }
    return worst;
}

MetricsReport compute_metrics(const ExcitationGrid &grid, const ArrayGeometry &geometry, std::span<const Beam> beams,
                              const std::set<int> &useful, std::span<const double> theta_deg, std::size_t points)
{
    MetricsReport report;
    report.p_q = harmonic_powers(grid);
    report.useful = useful;
    report.eta = efficiency(report.p_q, useful);

    const double total = beams.empty() ? 0.0 : total_radiated_integral(grid, geometry, points);
    for (const Beam &beam : beams)
    {
        const HarmonicPattern pattern = evaluate_pattern(grid, geometry, beam.harmonic, theta_deg);
        BeamMetrics m{beam.harmonic, beam.theta_deg, pattern_stats(pattern), 0.0, 0.0};
        const double peak = std::norm(array_factor(grid, geometry, beam.harmonic, beam.theta_deg));
        if (!(peak > 0.0))
            throw std::invalid_argument("compute_metrics: beam " + std::to_string(beam.harmonic) +
                                        " has zero gain at its target");
        m.directivity_pattern_dbi = to_dbi(2.0 * peak / radiated_integral(grid, geometry, beam.harmonic, points));
        m.directivity_total_dbi = to_dbi(2.0 * peak / total);
        report.beams.push_back(m);
    }
    return report;
}

} // namespace tmabeam
