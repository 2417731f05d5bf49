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

#include <algorithm>
#include <cmath>
#include <set>

namespace tmabeam
{

double wrap_phase(double radians)
{
    double r = std::remainder(radians, kTwoPi);
    if (r <= -kPi)
        r += kTwoPi;
    if (r > kPi)
        r -= kTwoPi;
    return r;
}

Complex unit_phasor_turns(double turns)
{
    const double r = turns - std::round(turns);
    return {std::cos(kTwoPi * r), std::sin(kTwoPi * r)};
}

double direction_cosine(double theta_deg)
{
    if (theta_deg == 90.0)
        return 0.0;
    if (theta_deg == 0.0)
        return 1.0;
    if (theta_deg == 180.0)
        return -1.0;
    return std::cos(theta_deg * kPi / 180.0);
}

double sinc(double x)
{
    if (x == 0.0)
        return 1.0;
    // Reduce to [-1, 1] so that integer arguments give an exact zero.
    const double r = x - 2.0 * std::round(x / 2.0);
    if (r == 0.0 || r == 1.0 || r == -1.0)
        return 0.0;
    return std::sin(kPi * r) / (kPi * x);
}

ArrayGeometry::ArrayGeometry(std::vector<double> positions) : positions_(std::move(positions))
{
    if (positions_.empty())
        throw std::invalid_argument("ArrayGeometry: at least one element is required");
    for (std::size_t n = 0; n < positions_.size(); ++n)
    {
        if (!std::isfinite(positions_[n]))
            throw std::invalid_argument("ArrayGeometry: element positions must be finite");
        if (n > 0 && !(positions_[n] > positions_[n - 1]))
            throw std::invalid_argument("ArrayGeometry: element positions must be strictly increasing");
    }
}

ArrayGeometry build_uniform_geometry(int n_elements, double spacing)
{
    if (n_elements < 1)
        throw std::invalid_argument("build_uniform_geometry: n_elements must be positive");
    if (!(spacing > 0.0) || !std::isfinite(spacing))
        throw std::invalid_argument("build_uniform_geometry: spacing must be positive");

    std::vector<double> z(static_cast<std::size_t>(n_elements));
    for (int n = 0; n < n_elements; ++n)
        z[static_cast<std::size_t>(n)] = n * spacing;
    return ArrayGeometry(std::move(z));
}

HarmonicBand::HarmonicBand(int exploited_order, int limit) : exploited(exploited_order), band_limit(limit)
{
    if (exploited < 1)
        throw std::invalid_argument("HarmonicBand: L must be positive");
    if (band_limit < exploited)
        throw std::invalid_argument("HarmonicBand: L must not exceed the band limit Q");
}

// ---- HarmonicTable -------------------------------------------------------

template <class Tag>
HarmonicTable<Tag>::HarmonicTable(std::size_t rows, std::vector<int> orders, std::vector<double> values)
    : rows_(rows), orders_(std::move(orders)), values_(std::move(values))
{
    if (values_.size() != rows_ * orders_.size())
        throw std::invalid_argument("HarmonicTable: value count does not match rows x orders");
    if (std::set<int>(orders_.begin(), orders_.end()).size() != orders_.size())
        throw std::invalid_argument("HarmonicTable: duplicate harmonic order");
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("HarmonicTable: values must be finite");
}

template <class Tag>
HarmonicTable<Tag> HarmonicTable<Tag>::zeros(std::size_t rows, std::vector<int> orders)
{
    const std::size_t count = rows * orders.size();
    return HarmonicTable(rows, std::move(orders), std::vector<double>(count, 0.0));
}

template <class Tag>
int HarmonicTable<Tag>::column_of(int q) const
{
    auto it = std::find(orders_.begin(), orders_.end(), q);
    return it == orders_.end() ? -1 : static_cast<int>(it - orders_.begin());
}

template <class Tag>
double HarmonicTable<Tag>::value(std::size_t row, int q) const
{
    const int c = column_of(q);
    if (c < 0)
        throw std::invalid_argument("HarmonicTable: harmonic order " + std::to_string(q) + " not present");
    if (row >= rows_)
        throw std::out_of_range("HarmonicTable: row out of range");
    return at(row, static_cast<std::size_t>(c));
}

template class HarmonicTable<PhaseTag>;
template class HarmonicTable<DelayTag>;

// ---- ExcitationGrid ------------------------------------------------------

std::string_view to_string(Provenance provenance)
{
    switch (provenance)
    {
    case Provenance::rect:
        return "rect";
    case Provenance::swc:
        return "swc";
    case Provenance::ssb:
        return "ssb";
    }
    return "unknown";
}

ExcitationGrid::ExcitationGrid(std::size_t n_elements, int band_limit, Provenance provenance,
                               std::vector<Complex> values)
    : n_elements_(n_elements), band_limit_(band_limit), provenance_(provenance), values_(std::move(values))
{
    if (n_elements_ == 0)
        throw std::invalid_argument("ExcitationGrid: at least one element is required");
    if (band_limit_ < 0)
        throw std::invalid_argument("ExcitationGrid: band limit must be non-negative");
    if (values_.size() != n_elements_ * static_cast<std::size_t>(2 * band_limit_ + 1))
        throw std::invalid_argument("ExcitationGrid: value count does not match N x (2Q+1)");
    for (const Complex &v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("ExcitationGrid: entries must be finite");
}

std::size_t ExcitationGrid::index(std::size_t n, int q) const
{
    if (!in_band(q))
        throw std::invalid_argument("ExcitationGrid: harmonic " + std::to_string(q) + " outside band [-" +
                                    std::to_string(band_limit_) + ", " + std::to_string(band_limit_) + "]");
    if (n >= n_elements_)
        throw std::out_of_range("ExcitationGrid: element index out of range");
    return n * static_cast<std::size_t>(2 * band_limit_ + 1) + static_cast<std::size_t>(q + band_limit_);
}

Complex ExcitationGrid::at(std::size_t n, int q) const
{
    return values_[index(n, q)];
}

std::vector<Complex> ExcitationGrid::column(int q) const
{
    std::vector<Complex> out(n_elements_);
    for (std::size_t n = 0; n < n_elements_; ++n)
        out[n] = values_[index(n, q)];
    return out;
}

ExcitationGrid ExcitationGrid::with_entry(std::size_t n, int q, Complex value) const
{
    std::vector<Complex> v = values_;
    v[index(n, q)] = value;
    return ExcitationGrid(n_elements_, band_limit_, provenance_, std::move(v));
}

ExcitationGrid ExcitationGrid::scaled(Complex factor) const
{
    std::vector<Complex> v = values_;
    for (Complex &x : v)
        x *= factor;
    return ExcitationGrid(n_elements_, band_limit_, provenance_, std::move(v));
}

GridDiagnostics validate_grid(const ExcitationGrid &grid, double tolerance)
{
    GridDiagnostics report;
    const int Q = grid.band_limit();
    const bool real_pulse = grid.provenance() != Provenance::ssb;

    for (std::size_t n = 0; n < grid.n_elements(); ++n)
    {
        for (int q = -Q; q <= Q; ++q)
        {
            const Complex v = grid.at(n, q);
            const double mag = std::abs(v);
            report.max_magnitude = std::max(report.max_magnitude, mag);
            if (mag > 1.0 + tolerance)
                report.violations.push_back({GridViolation::Kind::magnitude, n, q, mag - 1.0});

            if (real_pulse && q > 0)
            {
                const double dev = std::abs(v - std::conj(grid.at(n, -q)));
                report.max_conjugate_deviation = std::max(report.max_conjugate_deviation, dev);
                if (dev > tolerance)
                    report.violations.push_back({GridViolation::Kind::conjugate_symmetry, n, q, dev});
            }
            if (!real_pulse && q <= 0)
            {
                report.max_negative_band_magnitude = std::max(report.max_negative_band_magnitude, mag);
                if (mag > tolerance)
                    report.violations.push_back({GridViolation::Kind::negative_band, n, q, mag});
            }
        }
    }
    return report;
}

} // namespace tmabeam
