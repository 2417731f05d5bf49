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

// Independent reference computations for the tests. Nothing here calls into
// the library beyond reading grid entries and positions.

#include "tmabeam/core.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracle
{

using Complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

// Direct sum F(theta) = sum_n w_n exp(j 2 pi z_n cos theta), long double.
inline Complex array_sum(const std::vector<Complex> &w, const std::vector<double> &z, double theta_deg)
{
    const long double u = std::cos(static_cast<long double>(theta_deg) * std::numbers::pi_v<long double> / 180.0L);
    long double re = 0.0L, im = 0.0L;
    for (std::size_t n = 0; n < w.size(); ++n)
    {
        const long double a = 2.0L * std::numbers::pi_v<long double> * z[n] * u;
        const long double c = std::cos(a), s = std::sin(a);
        re += w[n].real() * c - w[n].imag() * s;
        im += w[n].real() * s + w[n].imag() * c;
    }
    return {static_cast<double>(re), static_cast<double>(im)};
}

// int_0^pi |F|^2 sin(theta) d theta in closed form:
// sum_{n,m} w_n conj(w_m) * 2 sinc(2 (z_n - z_m)), sinc(x) = sin(pi x)/(pi x).
inline double radiated_integral(const std::vector<Complex> &w, const std::vector<double> &z)
{
    long double acc = 0.0L;
    for (std::size_t n = 0; n < w.size(); ++n)
        for (std::size_t m = 0; m < w.size(); ++m)
        {
            const long double x = 2.0L * (z[n] - z[m]);
            const long double s =
                x == 0.0L ? 1.0L
                          : std::sin(std::numbers::pi_v<long double> * x) / (std::numbers::pi_v<long double> * x);
            acc += (w[n] * std::conj(w[m])).real() * 2.0L * s;
        }
    return static_cast<double>(acc);
}

// Angle of the largest |F|^2 on a uniform grid with `count` samples over [lo, hi].
inline double dense_argmax(const std::vector<Complex> &w, const std::vector<double> &z, double lo, double hi,
                           std::size_t count)
{
    double best = -1.0, at = lo;
    for (std::size_t i = 0; i < count; ++i)
    {
        const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        const double p = std::norm(array_sum(w, z, t));
        if (p > best)
        {
            best = p;
            at = t;
        }
    }
    return at;
}

// Naive DFT bin k of x, normalized by the record length.
inline Complex dft_bin(const std::vector<Complex> &x, long k)
{
    const long M = static_cast<long>(x.size());
    long double re = 0.0L, im = 0.0L;
    for (long m = 0; m < M; ++m)
    {
        const long idx = ((k * m) % M + M) % M;
        const long double a = -2.0L * std::numbers::pi_v<long double> * idx / M;
        re += x[m].real() * std::cos(a) - x[m].imag() * std::sin(a);
        im += x[m].real() * std::sin(a) + x[m].imag() * std::cos(a);
    }
    return {static_cast<double>(re / M), static_cast<double>(im / M)};
}

// Exact Fourier coefficient of the 0/1 pulse on [delay, delay + duty) mod 1,
// integrated analytically in long double: (e^{-j2pi q a} - e^{-j2pi q b}) / (j2pi q).
inline Complex rect_fourier(double duty, double delay, int q)
{
    if (q == 0)
        return duty;
    const long double a = delay, b = static_cast<long double>(delay) + duty;
    const long double w = 2.0L * std::numbers::pi_v<long double> * q;
    const std::complex<long double> ea(std::cos(w * a), -std::sin(w * a));
    const std::complex<long double> eb(std::cos(w * b), -std::sin(w * b));
    const std::complex<long double> r = (ea - eb) / std::complex<long double>(0.0L, w);
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

} // namespace oracle
