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
#include "tmabeam/pulse.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace tmabeam
{

// Sample-level model of the multi-stream receiver: each element output is
// multiplied by its modulating waveform (r_cos + j r_sin for SSB, the switch
// state for rectangular pulses) and the branches are summed. Everything runs
// in complex baseband, so a CW stream is a constant u(t).

using Modulation = std::variant<SSBParams, RectPulseParams>;

struct Stream
{
    double doa_deg;                // direction of arrival, [0, 180]
    int harmonic;                  // beam the stream is meant to be received on, >= 1
    double bandwidth;              // B in units of omega0 / 2 pi, [0, 1)
    std::vector<Complex> baseband; // u(t_m), at least as many samples as the scene
};

class Scene
{
  public:
    // duration in T0, sample_rate in samples per T0. Requires
    // sample_rate > 4 (L + 1) and every stream bandwidth below 1.
    Scene(ArrayGeometry geometry, Modulation modulation, std::vector<Stream> streams, double duration, int sample_rate,
          double time_origin = 0.0);

    const ArrayGeometry &geometry() const { return geometry_; }
    const Modulation &modulation() const { return modulation_; }
    std::span<const Stream> streams() const { return streams_; }
    double duration() const { return duration_; }
    int sample_rate() const { return sample_rate_; }
    double time_origin() const { return time_origin_; }
    std::size_t length() const { return length_; }

    // SSB order, or the highest stream harmonic (at least 1) for switched pulses.
    int exploited_order() const;

    // Same scene restricted to one stream (used for crosstalk measurements).
    Scene with_single_stream(std::size_t index) const;

  private:
    ArrayGeometry geometry_;
    Modulation modulation_;
    std::vector<Stream> streams_;
    double duration_;
    int sample_rate_;
    double time_origin_;
    std::size_t length_;
};

// u(t) = amplitude for every sample.
std::vector<Complex> cw_waveform(Complex amplitude, std::size_t length);

// Sum of equal-power tones with random phases on the record's DFT grid,
// restricted to |f| <= bandwidth / 2 and normalized to unit mean power. The
// record is periodic, so ideal frequency-domain filtering is exact.
std::vector<Complex> multitone_waveform(double bandwidth, std::size_t length, int sample_rate, std::uint64_t seed);

// s(t_m) = sum_streams u(t_m) sum_n (r_cos + j r_sin)(t_m) exp(j k z_n cos theta),
// t_m = time_origin + m / f_s. Summation order is fixed (elements, then streams).
std::vector<Complex> synthesize_received(const Scene &scene);

struct SpectralLine
{
    int harmonic; // frequency in units of omega0
    Complex amplitude;
};

// Lines on the q omega0 lattice from a record holding an integer number of
// periods. Returns q in [-f_s/2, f_s/2 - 1] (ascending).
std::vector<SpectralLine> spectral_lines(std::span<const Complex> series, int sample_rate);

// Recovers harmonics q = 1..L: shift by -q omega0 and keep |f| < 1/2, i.e. the
// B/2 signal band plus a (1 - B)/2 guard. Zero-phase, so no delay to undo.
std::vector<std::vector<Complex>> demux(std::span<const Complex> series, int sample_rate, int exploited_order,
                                        double bandwidth, double time_origin = 0.0);

struct LinkReport
{
    std::vector<SpectralLine> lines;                    // q in [-(L+1), L+1] when period aligned
    std::vector<std::optional<double>> image_rejection_db; // per q = 1..L; absent without signal
    std::vector<std::vector<std::optional<double>>> crosstalk_db; // [output of stream i][stream j]
    std::vector<double> normalized_error;               // per stream, vs F_q(theta) u(t)
};

// dB figures are clamped to +-300 dB so that exact zeros stay representable.
inline constexpr double kDbClamp = 300.0;

LinkReport link_metrics(const Scene &scene, const std::vector<std::vector<Complex>> &recovered);

// Grid whose array factor predicts each harmonic line of the scene.
ExcitationGrid scene_grid(const Scene &scene, int band_limit);

} // namespace tmabeam
