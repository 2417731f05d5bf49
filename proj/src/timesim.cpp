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

#include "tmabeam/timesim.hpp"

#include "tmabeam/metrics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <random>

namespace tmabeam
{

namespace
{

// FFTW planning is not thread safe; execution is.
std::mutex &planner_mutex()
{
    static std::mutex m;
    return m;
}

// fftw_malloc keeps the buffer alignment fixed, so the planner picks the same
// codelets on every run and results stay bit-reproducible.
class FftBuffer
{
  public:
    explicit FftBuffer(std::size_t n) : n_(n), data_(static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * n)))
    {
        if (!data_)
            throw std::bad_alloc();
    }
    ~FftBuffer() { fftw_free(data_); }
    FftBuffer(const FftBuffer &) = delete;
    FftBuffer &operator=(const FftBuffer &) = delete;

    fftw_complex *data() { return data_; }
    std::size_t size() const { return n_; }

    void load(std::span<const Complex> x)
    {
        std::memcpy(data_, x.data(), sizeof(fftw_complex) * n_);
    }
    std::vector<Complex> store() const
    {
        std::vector<Complex> out(n_);
        std::memcpy(static_cast<void *>(out.data()), data_, sizeof(fftw_complex) * n_);
        return out;
    }

  private:
    std::size_t n_;
    fftw_complex *data_;
};

// Unnormalized DFT; sign -1 forward, +1 inverse.
std::vector<Complex> dft(std::span<const Complex> x, int sign)
{
    if (x.empty())
        return {};
    FftBuffer buf(x.size());
    buf.load(x);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(x.size()), buf.data(), buf.data(), sign, FFTW_ESTIMATE);
    }
    if (!plan)
        throw std::runtime_error("FFTW planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    return buf.store();
}

// Signed frequency of DFT bin k in cycles per T0.
double bin_frequency(std::size_t k, std::size_t length, int sample_rate)
{
    const auto K = static_cast<double>(length);
    const double kk = k < (length + 1) / 2 ? static_cast<double>(k) : static_cast<double>(k) - K;
    return kk * sample_rate / K;
}

double clamp_db(double db)
{
    return std::clamp(db, -kDbClamp, kDbClamp);
}

std::optional<double> ratio_db(double num, double den)
{
    if (num == 0.0 && den == 0.0)
        return std::nullopt;
    if (den == 0.0)
        return kDbClamp;
    if (num == 0.0)
        return -kDbClamp;
    return clamp_db(10.0 * std::log10(num / den));
}

double mean_power(std::span<const Complex> x)
{
    double s = 0.0;
    for (const Complex &v : x)
        s += std::norm(v);
    return x.empty() ? 0.0 : s / static_cast<double>(x.size());
}

std::size_t modulation_size(const Modulation &m)
{
    return std::visit([](const auto &p) { return p.size(); }, m);
}

Complex modulation_sample(const Modulation &m, std::size_t n, double t)
{
    if (const auto *ssb = std::get_if<SSBParams>(&m))
    {
        const QuadraturePair r = ssb_waveforms(*ssb, n, t);
        return {r.cos_branch, r.sin_branch};
    }
    return rect_waveform(std::get<RectPulseParams>(m), n, t);
}

} // namespace

// ---- Scene ---------------------------------------------------------------

Scene::Scene(ArrayGeometry geometry, Modulation modulation, std::vector<Stream> streams, double duration,
             int sample_rate, double time_origin)
    : geometry_(std::move(geometry)), modulation_(std::move(modulation)), streams_(std::move(streams)),
      duration_(duration), sample_rate_(sample_rate), time_origin_(time_origin), length_(0)
{
    if (modulation_size(modulation_) != geometry_.size())
        throw std::invalid_argument("Scene: modulation and geometry element counts differ");
    if (!(duration_ > 0.0) || !std::isfinite(duration_))
        throw std::invalid_argument("Scene: duration must be positive");
    if (!std::isfinite(time_origin_))
        throw std::invalid_argument("Scene: time origin must be finite");
    const int L = exploited_order();
    if (sample_rate_ <= 4 * (L + 1))
        throw std::invalid_argument("Scene: sample rate must exceed 4 (L + 1) samples per period");
    length_ = static_cast<std::size_t>(std::llround(duration_ * sample_rate_));
    if (length_ == 0)
        throw std::invalid_argument("Scene: empty record");

    const bool ssb = std::holds_alternative<SSBParams>(modulation_);
    for (const Stream &s : streams_)
    {
        if (!(s.doa_deg >= 0.0 && s.doa_deg <= 180.0))
            throw std::invalid_argument("Scene: direction of arrival must lie in [0, 180] degrees");
        if (!(s.bandwidth >= 0.0 && s.bandwidth < 1.0))
            throw std::invalid_argument("Scene: stream bandwidth must satisfy 0 <= B < omega0");
        if (s.harmonic < 1 || (ssb && s.harmonic > L))
            throw std::invalid_argument("Scene: stream harmonic must lie in [1, L]");
        if (s.baseband.size() < length_)
            throw std::invalid_argument("Scene: stream baseband shorter than the record");
    }
}

int Scene::exploited_order() const
{
    if (const auto *ssb = std::get_if<SSBParams>(&modulation_))
        return ssb->order();
    int L = 1;
    for (const Stream &s : streams_)
        L = std::max(L, s.harmonic);
    return L;
}

Scene Scene::with_single_stream(std::size_t index) const
{
    return Scene(geometry_, modulation_, {streams_.at(index)}, duration_, sample_rate_, time_origin_);
}

std::vector<Complex> cw_waveform(Complex amplitude, std::size_t length)
{
    return std::vector<Complex>(length, amplitude);
}

std::vector<Complex> multitone_waveform(double bandwidth, std::size_t length, int sample_rate, std::uint64_t seed)
{
    if (!(bandwidth >= 0.0 && bandwidth < 1.0))
        throw std::invalid_argument("multitone_waveform: bandwidth must lie in [0, 1)");
    if (length == 0 || sample_rate <= 0)
        throw std::invalid_argument("multitone_waveform: empty record");

    // Bin k sits at k f_s / length cycles per T0.
    const auto kmax = static_cast<long long>(std::floor(bandwidth / 2.0 * static_cast<double>(length) / sample_rate));
    const auto tones = static_cast<std::size_t>(2 * kmax + 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 1.0);
    std::vector<Complex> amp(tones);
    for (auto &a : amp)
        a = unit_phasor_turns(phase(rng)) / std::sqrt(static_cast<double>(tones));

    const auto Lr = static_cast<long long>(length);
    std::vector<Complex> u(length, 0.0);
    for (std::size_t m = 0; m < length; ++m)
    {
        Complex sum = 0.0;
        for (long long k = -kmax; k <= kmax; ++k)
        {
            long long idx = (k * static_cast<long long>(m)) % Lr;
            if (idx < 0)
                idx += Lr;
            sum += amp[static_cast<std::size_t>(k + kmax)] *
                   unit_phasor_turns(static_cast<double>(idx) / static_cast<double>(length));
        }
        u[m] = sum;
    }
    return u;
}

std::vector<Complex> synthesize_received(const Scene &scene)
{
    const std::size_t len = scene.length();
    const auto fs = static_cast<std::size_t>(scene.sample_rate());
    const std::size_t N = scene.geometry().size();
    const std::size_t period = std::min(fs, len);

    // Modulation samples repeat every f_s samples (one T0).
    std::vector<Complex> mod(N * period);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t k = 0; k < period; ++k)
            mod[n * period + k] = modulation_sample(
                scene.modulation(), n, scene.time_origin() + static_cast<double>(k) / static_cast<double>(fs));

    std::vector<Complex> out(len, 0.0);
    for (const Stream &stream : scene.streams())
    {
        const double u = direction_cosine(stream.doa_deg);
        std::vector<Complex> steer(N);
        for (std::size_t n = 0; n < N; ++n)
            steer[n] = unit_phasor_turns(scene.geometry().position(n) * u);

        std::vector<Complex> combined(period, 0.0);
        for (std::size_t k = 0; k < period; ++k)
            for (std::size_t n = 0; n < N; ++n)
                combined[k] += mod[n * period + k] * steer[n];

        for (std::size_t m = 0; m < len; ++m)
            out[m] += stream.baseband[m] * combined[m % period];
    }
    return out;
}

std::vector<SpectralLine> spectral_lines(std::span<const Complex> series, int sample_rate)
{
    if (sample_rate <= 0)
        throw std::invalid_argument("spectral_lines: sample rate must be positive");
    const auto fs = static_cast<std::size_t>(sample_rate);
    if (series.empty() || series.size() % fs != 0)
        throw std::invalid_argument("spectral_lines: record must hold an integer number of modulation periods");

    const std::size_t periods = series.size() / fs;
    const std::vector<Complex> X = dft(series, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(series.size());

    std::vector<SpectralLine> lines;
    lines.reserve(fs);
    const int half = sample_rate / 2;
    for (int q = -half; q < sample_rate - half; ++q)
    {
        const int wrapped = q < 0 ? q + sample_rate : q;
        lines.push_back({q, X[static_cast<std::size_t>(wrapped) * periods] * scale});
    }
    return lines;
}

std::vector<std::vector<Complex>> demux(std::span<const Complex> series, int sample_rate, int exploited_order,
                                        double bandwidth, double time_origin)
{
    if (!(bandwidth >= 0.0 && bandwidth < 1.0))
        throw std::invalid_argument("demux: harmonic bands overlap unless 0 <= B < omega0");
    if (exploited_order < 1)
        throw std::invalid_argument("demux: L must be positive");
    if (sample_rate <= 2 * (exploited_order + 1))
        throw std::invalid_argument("demux: sample rate too low for the requested harmonics");

    const std::size_t len = series.size();
    std::vector<std::vector<Complex>> out;
    for (int q = 1; q <= exploited_order; ++q)
    {
        std::vector<Complex> shifted(len);
        for (std::size_t m = 0; m < len; ++m)
        {
            const double t = time_origin + static_cast<double>(m) / sample_rate;
            shifted[m] = series[m] * unit_phasor_turns(-q * t);
        }
        std::vector<Complex> X = dft(shifted, FFTW_FORWARD);
        for (std::size_t k = 0; k < len; ++k)
        {
            const double f = bin_frequency(k, len, sample_rate);
            if (!(f >= -0.5 && f < 0.5))
                X[k] = 0.0;
        }
        std::vector<Complex> y = dft(X, FFTW_BACKWARD);
        const double scale = 1.0 / static_cast<double>(len);
        for (Complex &v : y)
            v *= scale;
        out.push_back(std::move(y));
    }
    return out;
}

ExcitationGrid scene_grid(const Scene &scene, int band_limit)
{
    if (const auto *ssb = std::get_if<SSBParams>(&scene.modulation()))
        return grid_from_ssb(*ssb, std::max(band_limit, ssb->order()));
    return grid_from_rect(std::get<RectPulseParams>(scene.modulation()), band_limit);
}

LinkReport link_metrics(const Scene &scene, const std::vector<std::vector<Complex>> &recovered)
{
    const int L = scene.exploited_order();
    if (recovered.size() != static_cast<std::size_t>(L))
        throw std::invalid_argument("link_metrics: expected one recovered stream per harmonic 1..L");

    LinkReport report;
    const std::vector<Complex> series = synthesize_received(scene);
    const int fs = scene.sample_rate();

    if (series.size() % static_cast<std::size_t>(fs) == 0)
        for (const SpectralLine &line : spectral_lines(series, fs))
            if (std::abs(line.harmonic) <= L + 1)
                report.lines.push_back(line);

    // Image rejection from band powers around +q and -q.
    const std::vector<Complex> X = dft(series, FFTW_FORWARD);
    for (int q = 1; q <= L; ++q)
    {
        double upper = 0.0, lower = 0.0;
        for (std::size_t k = 0; k < X.size(); ++k)
        {
            const double f = bin_frequency(k, X.size(), fs);
            if (f >= q - 0.5 && f < q + 0.5)
                upper += std::norm(X[k]);
            if (f >= -q - 0.5 && f < -q + 0.5)
                lower += std::norm(X[k]);
        }
        report.image_rejection_db.push_back(ratio_db(upper, lower));
    }

    const std::size_t S = scene.streams().size();
    double max_bw = 0.0;
    for (const Stream &s : scene.streams())
        max_bw = std::max(max_bw, s.bandwidth);

    // Crosstalk by linearity: each stream alone through the receiver.
    std::vector<std::vector<double>> leak(S, std::vector<double>(static_cast<std::size_t>(L), 0.0));
    for (std::size_t j = 0; j < S; ++j)
    {
        const Scene single = scene.with_single_stream(j);
        const auto outputs = demux(synthesize_received(single), fs, L, max_bw, scene.time_origin());
        for (int q = 1; q <= L; ++q)
            leak[j][static_cast<std::size_t>(q - 1)] = mean_power(outputs[static_cast<std::size_t>(q - 1)]);
    }
    report.crosstalk_db.assign(S, std::vector<std::optional<double>>(S));
    for (std::size_t i = 0; i < S; ++i)
    {
        const auto out_i = static_cast<std::size_t>(scene.streams()[i].harmonic - 1);
        for (std::size_t j = 0; j < S; ++j)
        {
            const auto own_j = static_cast<std::size_t>(scene.streams()[j].harmonic - 1);
            report.crosstalk_db[i][j] = i == j ? std::optional<double>(0.0) : ratio_db(leak[j][out_i], leak[j][own_j]);
        }
    }

    // Recovered waveform vs the array-factor prediction F_q(theta) u(t).
    const ExcitationGrid grid = scene_grid(scene, std::max(L, 1));
    for (const Stream &s : scene.streams())
    {
        const Complex gain = array_factor(grid, scene.geometry(), s.harmonic, s.doa_deg);
        const std::vector<Complex> &y = recovered[static_cast<std::size_t>(s.harmonic - 1)];
        double err = 0.0, ref = 0.0;
        for (std::size_t m = 0; m < y.size() && m < s.baseband.size(); ++m)
        {
            const Complex expect = gain * s.baseband[m];
            err += std::norm(y[m] - expect);
            ref += std::norm(expect);
        }
        report.normalized_error.push_back(ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err));
    }
    return report;
}

} // namespace tmabeam
