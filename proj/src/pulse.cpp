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

#include "tmabeam/pulse.hpp"

#include "parallel.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace tmabeam
{

namespace
{

double fractional_part(double t)
{
    double f = t - std::floor(t);
    return f >= 1.0 ? 0.0 : f;
}

void check_duty(double duty, bool allow_zero, const char *who)
{
    if (!std::isfinite(duty) || duty > 1.0 || duty < 0.0 || (!allow_zero && duty == 0.0))
        throw std::invalid_argument(std::string(who) + ": duty cycle out of range");
}

} // namespace

// ---- parameter records ---------------------------------------------------

RectPulseParams::RectPulseParams(std::vector<double> duty, std::vector<double> delay)
    : duty_(std::move(duty)), delay_(std::move(delay))
{
    if (duty_.empty())
        throw std::invalid_argument("RectPulseParams: at least one element is required");
    if (duty_.size() != delay_.size())
        throw std::invalid_argument("RectPulseParams: duty and delay lengths differ");
    for (std::size_t n = 0; n < duty_.size(); ++n)
    {
        check_duty(duty_[n], true, "RectPulseParams");
        if (!std::isfinite(delay_[n]) || delay_[n] < 0.0 || delay_[n] >= 1.0)
            throw std::invalid_argument("RectPulseParams: delay must lie in [0, 1)");
    }
}

SWCParams::SWCParams(std::vector<double> duty, std::vector<std::vector<double>> weights,
                     std::vector<std::vector<double>> phases)
    : duty_(std::move(duty)), weights_(std::move(weights)), phases_(std::move(phases))
{
    if (duty_.empty())
        throw std::invalid_argument("SWCParams: at least one element is required");
    if (weights_.size() != duty_.size() || phases_.size() != duty_.size())
        throw std::invalid_argument("SWCParams: per-element weights and phases required");
    const std::size_t terms = weights_.front().size();
    if (terms == 0)
        throw std::invalid_argument("SWCParams: at least the DC weight is required");
    order_ = static_cast<int>(terms) - 1;

    for (std::size_t n = 0; n < duty_.size(); ++n)
    {
        check_duty(duty_[n], true, "SWCParams");
        if (weights_[n].size() != terms || phases_[n].size() != terms)
            throw std::invalid_argument("SWCParams: every element needs L+1 weights and phases");
        for (std::size_t k = 0; k < terms; ++k)
        {
            const double a = weights_[n][k];
            if (!std::isfinite(a) || a < 0.0)
                throw std::invalid_argument("SWCParams: cosine weights must be non-negative");
            if (!std::isfinite(phases_[n][k]))
                throw std::invalid_argument("SWCParams: phases must be finite");
            const double magnitude = duty_[n] * (k == 0 ? a : a / 2.0);
            if (magnitude > 1.0)
                throw std::invalid_argument("SWCParams: dynamic excitation magnitude exceeds 1");
        }
    }
}

double SWCParams::weight(std::size_t n, int k) const
{
    if (k < 0 || k > order_)
        return 0.0;
    return weights_.at(n)[static_cast<std::size_t>(k)];
}

double SWCParams::phase(std::size_t n, int k) const
{
    if (k <= 0 || k > order_)
        return 0.0;
    return phases_.at(n)[static_cast<std::size_t>(k)];
}

namespace
{

PhaseMatrix wrapped_phase_table(std::size_t rows, const PhaseMatrix &phases)
{
    if (phases.rows() != rows)
        throw std::invalid_argument("SSBParams: phase table rows must match element count");
    const int L = static_cast<int>(phases.columns());
    if (L < 1)
        throw std::invalid_argument("SSBParams: at least one harmonic is required");

    std::vector<int> orders(static_cast<std::size_t>(L));
    std::vector<double> values(rows * static_cast<std::size_t>(L));
    for (int q = 1; q <= L; ++q)
    {
        if (phases.column_of(q) < 0)
            throw std::invalid_argument("SSBParams: phase table must cover harmonics 1..L");
        orders[static_cast<std::size_t>(q - 1)] = q;
        for (std::size_t n = 0; n < rows; ++n)
            values[n * static_cast<std::size_t>(L) + static_cast<std::size_t>(q - 1)] = wrap_phase(phases.value(n, q));
    }
    return PhaseMatrix(rows, std::move(orders), std::move(values));
}

} // namespace

SSBParams::SSBParams(std::vector<double> duty, const PhaseMatrix &phases, std::vector<bool> active)
    : duty_(std::move(duty)), phases_(wrapped_phase_table(duty_.size(), phases)), active_(std::move(active)),
      order_(static_cast<int>(phases.columns()))
{
    if (duty_.empty())
        throw std::invalid_argument("SSBParams: at least one element is required");
    for (double d : duty_)
        check_duty(d, false, "SSBParams");
    if (active_.empty())
        active_.assign(static_cast<std::size_t>(order_), true);
    if (active_.size() != static_cast<std::size_t>(order_))
        throw std::invalid_argument("SSBParams: active mask must have L entries");
}

SSBParams SSBParams::from_delays(std::vector<double> duty, const DelayMatrix &delays, std::vector<bool> active)
{
    std::vector<int> orders(delays.orders().begin(), delays.orders().end());
    std::vector<double> values(delays.values().size());
    for (std::size_t n = 0; n < delays.rows(); ++n)
        for (std::size_t c = 0; c < delays.columns(); ++c)
            values[n * delays.columns() + c] = orders[c] * kOmega0 * delays.at(n, c);
    return SSBParams(std::move(duty), PhaseMatrix(delays.rows(), std::move(orders), std::move(values)),
                     std::move(active));
}

double SSBParams::phase(std::size_t n, int q) const
{
    return phases_.value(n, q);
}

bool SSBParams::active(int q) const
{
    if (q < 1 || q > order_)
        return false;
    return active_[static_cast<std::size_t>(q - 1)];
}

// ---- waveforms and coefficients ------------------------------------------

double rect_waveform(const RectPulseParams &params, std::size_t n, double t)
{
    const double duty = params.duty(n);
    if (duty >= 1.0)
        return 1.0;
    return fractional_part(t - params.delay(n)) < duty ? 1.0 : 0.0;
}

Complex rect_coeff(const RectPulseParams &params, std::size_t n, int q)
{
    const double duty = params.duty(n);
    if (q == 0)
        return duty;
    // Evaluate for |q| and conjugate so that G(-q) = conj(G(q)) bit for bit.
    const int aq = q < 0 ? -q : q;
    const double magnitude = duty * sinc(aq * duty);
    const Complex g = magnitude * unit_phasor_turns(-aq * (params.delay(n) + duty / 2.0));
    return q < 0 ? std::conj(g) : g;
}

double swc_waveform(const SWCParams &params, std::size_t n, double t)
{
    double sum = params.weight(n, 0);
    for (int k = 1; k <= params.order(); ++k)
        sum += params.weight(n, k) * std::cos(kOmega0 * k * t - params.phase(n, k));
    return params.duty(n) * sum;
}

Complex swc_coeff(const SWCParams &params, std::size_t n, int q)
{
    const int k = q < 0 ? -q : q;
    if (k > params.order())
        return 0.0;
    if (k == 0)
        return params.duty(n) * params.weight(n, 0);
    const Complex c = std::polar(params.duty(n) * params.weight(n, k) / 2.0, -params.phase(n, k));
    return q < 0 ? std::conj(c) : c;
}

QuadraturePair ssb_waveforms(const SSBParams &params, std::size_t n, double t)
{
    const double tf = fractional_part(t);
    double c = 0.0;
    double s = 0.0;
    for (int q = 1; q <= params.order(); ++q)
    {
        if (!params.active(q))
            continue;
        const double arg = kOmega0 * q * tf - params.phase(n, q);
        c += std::cos(arg);
        s += std::sin(arg);
    }
    return {params.duty(n) * c, params.duty(n) * s};
}

// ---- numeric oracles -----------------------------------------------------

namespace
{

void check_sample_count(int q, std::size_t samples)
{
    const std::size_t need = 64u * (static_cast<std::size_t>(std::abs(q)) + 1u);
    if (samples < need)
        throw std::invalid_argument("numeric_coeff: need at least 64(|q|+1) samples, got " + std::to_string(samples));
}

std::vector<Complex> sample_period(const Sampler &waveform, std::size_t samples)
{
    std::vector<Complex> w(samples);
    const double M = static_cast<double>(samples);
    for (std::size_t m = 0; m < samples; ++m)
        w[m] = waveform(static_cast<double>(m) / M);
    return w;
}

// Twiddle index (q m) mod M computed in integers so the phase is exact.
std::size_t twiddle_index(int q, std::size_t m, std::size_t M)
{
    const auto Mi = static_cast<std::int64_t>(M);
    std::int64_t k = (static_cast<std::int64_t>(q) % Mi) * static_cast<std::int64_t>(m) % Mi;
    if (k < 0)
        k += Mi;
    return static_cast<std::size_t>(k);
}

} // namespace

Complex numeric_coeff(const Sampler &waveform, int q, std::size_t samples)
{
    check_sample_count(q, samples);
    const double M = static_cast<double>(samples);
    Complex sum = 0.0;
    for (std::size_t m = 0; m < samples; ++m)
    {
        const Complex w = waveform(static_cast<double>(m) / M);
        sum += w * unit_phasor_turns(-static_cast<double>(twiddle_index(q, m, samples)) / M);
    }
    return sum / M;
}

std::vector<Complex> numeric_coeffs(const Sampler &waveform, int q_lo, int q_hi, std::size_t samples)
{
    if (q_hi < q_lo)
        throw std::invalid_argument("numeric_coeffs: empty harmonic range");
    check_sample_count(std::max(std::abs(q_lo), std::abs(q_hi)), samples);

    const std::vector<Complex> w = sample_period(waveform, samples);
    const double M = static_cast<double>(samples);
    std::vector<Complex> twiddle(samples);
    detail::parallel_for(samples, [&](std::size_t k) { twiddle[k] = unit_phasor_turns(-static_cast<double>(k) / M); });

    std::vector<Complex> out(static_cast<std::size_t>(q_hi - q_lo + 1));
    detail::parallel_for(out.size(), [&](std::size_t i) {
        const int q = q_lo + static_cast<int>(i);
        Complex sum = 0.0;
        for (std::size_t m = 0; m < samples; ++m)
            sum += w[m] * twiddle[twiddle_index(q, m, samples)];
        out[i] = sum / M;
    }, 1);
    return out;
}

double waveform_mean_power(const Sampler &waveform, std::size_t samples)
{
    if (samples < 1024)
        throw std::invalid_argument("waveform_mean_power: need at least 1024 samples");
    const double M = static_cast<double>(samples);
    double sum = 0.0;
    for (std::size_t m = 0; m < samples; ++m)
        sum += std::norm(waveform(static_cast<double>(m) / M));
    return sum / M;
}

} // namespace tmabeam
