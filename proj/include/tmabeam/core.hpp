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

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tmabeam
{

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Normalized units used throughout the library: the modulation period T0 is
// one time unit, so omega0 = 2*pi, and element positions are in wavelengths.
// The carrier is carried symbolically (complex baseband, omega_c = 0).
inline constexpr double kModulationPeriod = 1.0;
inline constexpr double kOmega0 = kTwoPi / kModulationPeriod;

// Wrap an angle in radians to (-pi, pi].
double wrap_phase(double radians);

// exp(j*2*pi*turns), with the argument reduced to [-1/2, 1/2] first so large
// harmonic orders keep full precision.
Complex unit_phasor_turns(double turns);

// cos(theta) for theta in degrees, exact at 0, 90 and 180.
double direction_cosine(double theta_deg);

// sin(pi*x)/(pi*x), exactly zero at nonzero integers and exactly one at zero.
double sinc(double x);

// Linear array of isotropic elements on the z axis. Positions are in
// wavelengths, strictly increasing and finite.
class ArrayGeometry
{
  public:
    explicit ArrayGeometry(std::vector<double> positions);

    std::size_t size() const { return positions_.size(); }
    std::span<const double> positions() const { return positions_; }
    double position(std::size_t n) const { return positions_.at(n); }

    bool operator==(const ArrayGeometry &) const = default;

  private:
    std::vector<double> positions_;
};

// z_n = n * spacing for n = 0 .. n_elements-1.
ArrayGeometry build_uniform_geometry(int n_elements, double spacing);

// Harmonic band bookkeeping: L is the highest exploited harmonic, Q the band
// limit used when truncating infinite spectra. Requires 1 <= L <= Q.
struct HarmonicBand
{
    int exploited;  // L
    int band_limit; // Q

    HarmonicBand(int exploited_order, int limit);
};

// Real-valued table indexed by element and harmonic order. The Tag keeps phase
// schedules and delay schedules from being mixed up.
template <class Tag>
class HarmonicTable
{
  public:
    HarmonicTable(std::size_t rows, std::vector<int> orders, std::vector<double> values);
    static HarmonicTable zeros(std::size_t rows, std::vector<int> orders);

    std::size_t rows() const { return rows_; }
    std::size_t columns() const { return orders_.size(); }
    std::span<const int> orders() const { return orders_; }
    std::span<const double> values() const { return values_; }

    // Column index of harmonic order q, or -1 when absent.
    int column_of(int q) const;
    double at(std::size_t row, std::size_t column) const { return values_[row * orders_.size() + column]; }
    double value(std::size_t row, int q) const;

    bool operator==(const HarmonicTable &) const = default;

  private:
    std::size_t rows_;
    std::vector<int> orders_;
    std::vector<double> values_;
};

struct PhaseTag;
struct DelayTag;
using PhaseMatrix = HarmonicTable<PhaseTag>; // radians
using DelayMatrix = HarmonicTable<DelayTag>; // fractions of T0

extern template class HarmonicTable<PhaseTag>;
extern template class HarmonicTable<DelayTag>;

enum class Provenance
{
    rect,
    swc,
    ssb
};

std::string_view to_string(Provenance provenance);

// Dynamic excitations I_nq over elements n in [0, N-1] and harmonics
// q in [-Q, Q]. Entries are finite; immutable after construction.
class ExcitationGrid
{
  public:
    // values are row-major: values[n * (2Q+1) + (q + Q)].
    ExcitationGrid(std::size_t n_elements, int band_limit, Provenance provenance, std::vector<Complex> values);

    std::size_t n_elements() const { return n_elements_; }
    int band_limit() const { return band_limit_; }
    Provenance provenance() const { return provenance_; }
    bool in_band(int q) const { return q >= -band_limit_ && q <= band_limit_; }

    // Throws std::invalid_argument when q is outside [-Q, Q].
    Complex at(std::size_t n, int q) const;
    std::vector<Complex> column(int q) const;

    // Copy with one entry replaced.
    ExcitationGrid with_entry(std::size_t n, int q, Complex value) const;
    ExcitationGrid scaled(Complex factor) const;

  private:
    std::size_t index(std::size_t n, int q) const;

    std::size_t n_elements_;
    int band_limit_;
    Provenance provenance_;
    std::vector<Complex> values_;
};

struct GridViolation
{
    enum class Kind
    {
        magnitude,          // |I_nq| > 1
        conjugate_symmetry, // rect/swc: I_nq != conj(I_n(-q))
        negative_band       // ssb: I_nq != 0 for q <= 0
    };

    Kind kind;
    std::size_t element;
    int harmonic;
    double deviation;
};

struct GridDiagnostics
{
    double max_magnitude = 0.0;
    double max_conjugate_deviation = 0.0;
    double max_negative_band_magnitude = 0.0;
    std::vector<GridViolation> violations;

    bool ok() const { return violations.empty(); }
};

// Diagnostic only, never throws. Deviations above tolerance are listed.
GridDiagnostics validate_grid(const ExcitationGrid &grid, double tolerance = 1e-12);

} // namespace tmabeam
