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

#include <cstdint>
#include <filesystem>
#include <vector>

namespace tmabeam
{

// Binary complex time series, all fields little-endian:
//
//   offset  size  field
//        0     4  magic "TMAS"
//        4     4  uint32 version (1)
//        8     4  uint32 sample rate, samples per T0
//       12     4  uint32 sample count
//       16  16*n  interleaved (real, imag) IEEE-754 float64 pairs
inline constexpr char kSeriesMagic[4] = {'T', 'M', 'A', 'S'};
inline constexpr std::uint32_t kSeriesVersion = 1;

struct TimeSeries
{
    std::uint32_t sample_rate;
    std::vector<Complex> samples;
};

std::vector<std::uint8_t> encode_series(const TimeSeries &series);
// Throws std::invalid_argument on a malformed buffer.
TimeSeries decode_series(std::span<const std::uint8_t> bytes);

void write_series(const std::filesystem::path &path, const TimeSeries &series);
TimeSeries read_series(const std::filesystem::path &path);

} // namespace tmabeam
