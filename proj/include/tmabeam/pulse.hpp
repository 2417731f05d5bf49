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

#include <functional>
#include <vector>

namespace tmabeam
{

// Periodic modulating waveforms of the three architectures and their Fourier
// series coefficients. Times are in units of T0 and waveforms have period 1.

// Rectangular switching pulses: element n is on over [delay_n, delay_n + duty_n)
// modulo 1. duty in [0, 1], delay in [0, 1).
class RectPulseParams
{
  public:
    RectPulseParams(std::vector<double> duty, std::vector<double> delay);

    std::size_t size() const { return duty_.size(); }
    double duty(std::size_t n) const { return duty_.at(n); }
    double delay(std::size_t n) const { return delay_.at(n); }
    std::span<const double> duties() const { return duty_; }
    std::span<const double> delays() const { return delay_; }

  private:
    std::vector<double> duty_;
    std::vector<double> delay_;
};

// Sum-of-weighted-cosines pulses, modelled through their harmonic content:
//   I_n0 = duty_n * a_n0
//   I_n(+-k) = duty_n * (a_nk / 2) * exp(-+j Phi_nk),  k = 1..L
// which is the Fourier series of duty_n * sum_k a_nk cos(2 pi k t - Phi_nk).
// weights and phases are per element, k = 0..L (phase at k = 0 is ignored).
class SWCParams
{
  public:
    SWCParams(std::vector<double> duty, std::vector<std::vector<double>> weights,
              std::vector<std::vector<double>> phases);

    std::size_t size() const { return duty_.size(); }
    int order() const { return order_; } // L, the highest cosine order
    double duty(std::size_t n) const { return duty_.at(n); }
    double weight(std::size_t n, int k) const;
    double phase(std::size_t n, int k) const;

  private:
    std::vector<double> duty_;
    std::vector<std::vector<double>> weights_;
    std::vector<std::vector<double>> phases_;
    int order_ = 0;
};

// Preprocessed single-sideband modulation: the DC value duty_n of each
// rectangular pulse is remodulated onto harmonics q = 1..L with phases
// Phi_nq. Phases are stored wrapped to (-pi, pi]. Harmonics flagged inactive
// carry zero amplitude.
class SSBParams
{
  public:
    // phases must hold exactly the orders 1..L, in any column order.
    SSBParams(std::vector<double> duty, const PhaseMatrix &phases, std::vector<bool> active = {});

    // Phi_nq = q * omega0 * delta_nq.
    static SSBParams from_delays(std::vector<double> duty, const DelayMatrix &delays, std::vector<bool> active = {});

    std::size_t size() const { return duty_.size(); }
    int order() const { return order_; } // L
    double duty(std::size_t n) const { return duty_.at(n); }
    std::span<const double> duties() const { return duty_; }
    // q in [1, L]
    double phase(std::size_t n, int q) const;
    bool active(int q) const;
    const PhaseMatrix &phases() const { return phases_; }

  private:
    std::vector<double> duty_;
    PhaseMatrix phases_;
    std::vector<bool> active_;
    int order_;
};

double rect_waveform(const RectPulseParams &params, std::size_t n, double t);

// G_nq = duty * sinc(q * duty) * exp(-j 2 pi q (delay + duty / 2)); G_n0 = duty.
Complex rect_coeff(const RectPulseParams &params, std::size_t n, int q);

double swc_waveform(const SWCParams &params, std::size_t n, double t);
Complex swc_coeff(const SWCParams &params, std::size_t n, int q);

struct QuadraturePair
{
    double cos_branch;
    double sin_branch;
};

// r_cos = duty * sum_q cos(q w0 t - Phi_q), r_sin = duty * sum_q sin(q w0 t - Phi_q)
QuadraturePair ssb_waveforms(const SSBParams &params, std::size_t n, double t);

// A waveform over one modulation period, t in [0, 1).
using Sampler = std::function<Complex(double)>;

// Brute-force Fourier coefficient (1/M) sum_m w(m/M) exp(-j 2 pi q m / M).
// Requires M >= 64 (|q| + 1).
Complex numeric_coeff(const Sampler &waveform, int q, std::size_t samples);

// Same estimator for every q in [q_lo, q_hi], sampling the waveform once.
std::vector<Complex> numeric_coeffs(const Sampler &waveform, int q_lo, int q_hi, std::size_t samples);

// (1/M) sum_m |w(m/M)|^2. Requires M >= 1024.
double waveform_mean_power(const Sampler &waveform, std::size_t samples);

} // namespace tmabeam
