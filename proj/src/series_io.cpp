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

#include "tmabeam/series_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

namespace tmabeam
{

namespace
{

constexpr std::size_t kHeaderSize = 16;

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t> &out, double v)
{
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t *p)
{
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const std::uint8_t *p)
{
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

} // namespace

std::vector<std::uint8_t> encode_series(const TimeSeries &series)
{
    if (series.samples.size() > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("encode_series: too many samples for the 32-bit length field");

    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + 16 * series.samples.size());
    out.insert(out.end(), std::begin(kSeriesMagic), std::end(kSeriesMagic));
    put_u32(out, kSeriesVersion);
    put_u32(out, series.sample_rate);
    put_u32(out, static_cast<std::uint32_t>(series.samples.size()));
    for (const Complex &v : series.samples)
    {
        put_f64(out, v.real());
        put_f64(out, v.imag());
    }
    return out;
}

TimeSeries decode_series(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < kHeaderSize)
        throw std::invalid_argument("decode_series: truncated header");
    if (std::memcmp(bytes.data(), kSeriesMagic, 4) != 0)
        throw std::invalid_argument("decode_series: bad magic");
    if (get_u32(bytes.data() + 4) != kSeriesVersion)
        throw std::invalid_argument("decode_series: unsupported version");

    TimeSeries series{get_u32(bytes.data() + 8), {}};
    const std::uint32_t count = get_u32(bytes.data() + 12);
    if (bytes.size() != kHeaderSize + 16 * static_cast<std::size_t>(count))
        throw std::invalid_argument("decode_series: payload size does not match the header");

    series.samples.resize(count);
    const std::uint8_t *p = bytes.data() + kHeaderSize;
    for (std::uint32_t i = 0; i < count; ++i, p += 16)
        series.samples[i] = {get_f64(p), get_f64(p + 8)};
    return series;
}

void write_series(const std::filesystem::path &path, const TimeSeries &series)
{
    const std::vector<std::uint8_t> bytes = encode_series(series);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

TimeSeries read_series(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_series(bytes);
}

} // namespace tmabeam
