// SPDX-License-Identifier: Apache-2.0
//
// thz-vitals-sim: phase-based breathing monitoring for mmWave/THz monostatic sensing
// Copyright (C) 2026 The thz-vitals-sim authors
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

#include "breathing.hpp"
#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace thzvitals
{
    BreathingTrajectory linear_inhalation(double step, double max_displacement)
    {
        if (!(step > 0.0) || !(max_displacement > 0.0) || max_displacement > max_chest_displacement + 1e-12)
            fail(ErrorCode::invalid_argument, "inhalation ramp needs step > 0 and a maximum within (0, 3 cm]");
        const double ratio = max_displacement / step;
        const auto n_steps = static_cast<std::size_t>(std::llround(ratio));
        if (n_steps == 0 || std::abs(ratio - static_cast<double>(n_steps)) > 1e-6)
            fail(ErrorCode::invalid_argument, "step size must divide the maximum displacement");

        BreathingTrajectory t;
        t.kind = TrajectoryKind::linear_inhalation;
        t.step_size = step;
        t.offsets.resize(n_steps + 1);
        for (std::size_t k = 0; k <= n_steps; ++k)
            t.offsets[k] = max_displacement * (static_cast<double>(k) / static_cast<double>(n_steps));
        return t;
    }

    BreathingTrajectory reference_inhalation(double carrier_hz)
    {
        BreathingTrajectory t;
        if (carrier_hz == 100e9)
            t = linear_inhalation(500e-6);
        else if (carrier_hz == 300e9)
            t = linear_inhalation(max_chest_displacement / 180.0);
        else
            fail(ErrorCode::invalid_argument, "reference trajectories exist for 100 GHz and 300 GHz only");
        check_sampling(t, carrier_hz);
        return t;
    }

    BreathingTrajectory sinusoidal_breathing(double rate_bpm, double amplitude, double sample_interval,
                                             double duration)
    {
        if (!(rate_bpm > 0.0) || !(sample_interval > 0.0) || !(duration > sample_interval))
            fail(ErrorCode::invalid_argument, "sinusoidal breathing needs positive rate, interval and duration");
        if (!(amplitude >= min_breath_amplitude - 1e-15 && amplitude <= max_chest_displacement + 1e-15))
            fail(ErrorCode::invalid_argument, "breathing amplitude must lie in [3 mm, 3 cm]");

        BreathingTrajectory t;
        t.kind = TrajectoryKind::sinusoidal;
        t.rate_bpm = rate_bpm;
        t.sample_interval = sample_interval;
        const auto n = static_cast<std::size_t>(std::llround(duration / sample_interval));
        const double omega = 2.0 * pi * rate_bpm / 60.0;
        t.offsets.resize(n);
        for (std::size_t k = 0; k < n; ++k)
            t.offsets[k] = 0.5 * amplitude * (1.0 - std::cos(omega * static_cast<double>(k) * sample_interval));
        for (std::size_t k = 1; k < n; ++k)
            t.step_size = std::max(t.step_size, std::abs(t.offsets[k] - t.offsets[k - 1]));
        return t;
    }

    void check_sampling(const BreathingTrajectory &trajectory, double carrier_hz)
    {
        const double quarter_wave = 0.25 * speed_of_light / carrier_hz;
        for (std::size_t k = 1; k < trajectory.offsets.size(); ++k)
            if (!(std::abs(trajectory.offsets[k] - trajectory.offsets[k - 1]) < quarter_wave))
                fail(ErrorCode::sampling_violation, "trajectory step " + std::to_string(k) +
                                                        " reaches a quarter wavelength");
    }

    namespace
    {
        RateEstimate rate_by_peaks(std::span<const double> x, double dt)
        {
            const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
            const double range = *hi - *lo;
            if (!(range > 0.0))
                fail(ErrorCode::insufficient_data, "series is constant");
            const double threshold = *lo + 0.5 * range;

            std::vector<std::size_t> peaks;
            std::size_t i = 0;
            const std::size_t n = x.size();
            while (i < n)
            {
                if (!(x[i] > threshold))
                {
                    ++i;
                    continue;
                }
                std::size_t best = i;
                while (i < n && x[i] > threshold)
                {
                    if (x[i] > x[best])
                        best = i;
                    ++i;
                }
                if (best > 0 && best + 1 < n && x[best] > x[best - 1] && x[best] > x[best + 1])
                    peaks.push_back(best);
            }
            if (peaks.size() < 3)
                fail(ErrorCode::insufficient_data, "fewer than two breathing periods detected");
            const double span = static_cast<double>(peaks.back() - peaks.front()) * dt;
            return {static_cast<double>(peaks.size() - 1) / span * 60.0, RateMethod::peak_counting};
        }

        RateEstimate rate_by_spectrum(std::span<const double> x, double dt)
        {
            const std::size_t n = x.size();
            // Least-squares line removal
            double st = 0.0, sx = 0.0, stt = 0.0, stx = 0.0;
            for (std::size_t k = 0; k < n; ++k)
            {
                const double t = static_cast<double>(k);
                st += t, sx += x[k], stt += t * t, stx += t * x[k];
            }
            const double nn = static_cast<double>(n);
            const double slope = (nn * stx - st * sx) / (nn * stt - st * st);
            const double icept = (sx - slope * st) / nn;
            std::vector<double> y(n);
            double scale = 0.0;
            for (std::size_t k = 0; k < n; ++k)
            {
                y[k] = x[k] - (icept + slope * static_cast<double>(k));
                scale = std::max(scale, std::abs(x[k]));
            }

            const std::size_t half = n / 2;
            std::vector<double> mag(half + 1, 0.0);
            for (std::size_t b = 1; b <= half; ++b)
            {
                std::complex<double> acc{};
                for (std::size_t k = 0; k < n; ++k)
                {
                    const double turns = static_cast<double>((b * k) % n) / nn;
                    acc += y[k] * std::polar(1.0, -2.0 * pi * turns);
                }
                mag[b] = std::abs(acc);
            }
            const auto peak = static_cast<std::size_t>(std::max_element(mag.begin() + 1, mag.end()) - mag.begin());
            if (!(mag[peak] > 1e-12 * scale * nn))
                fail(ErrorCode::insufficient_data, "series has no periodic component");

            double refine = 0.0;
            if (peak > 1 && peak < half)
            {
                const double a = mag[peak - 1], b = mag[peak], c = mag[peak + 1];
                const double denom = a - 2.0 * b + c;
                if (denom != 0.0)
                    refine = 0.5 * (a - c) / denom;
            }
            const double freq = (static_cast<double>(peak) + refine) / (nn * dt);
            if (freq * nn * dt < 2.0)
                fail(ErrorCode::insufficient_data, "fewer than two breathing periods in the series");
            return {freq * 60.0, RateMethod::spectral};
        }
    }

    RateEstimate estimate_rate(std::span<const double> series, double sample_interval, RateMethod method)
    {
        if (!(sample_interval > 0.0))
            fail(ErrorCode::invalid_argument, "sample interval must be positive");
        if (series.size() < 4)
            fail(ErrorCode::insufficient_data, "series too short for rate estimation");
        return method == RateMethod::peak_counting ? rate_by_peaks(series, sample_interval)
                                                   : rate_by_spectrum(series, sample_interval);
    }

    RateEstimate estimate_rate(const TrackedTrajectory &trajectory, double sample_interval, RateMethod method)
    {
        std::vector<double> series;
        series.reserve(trajectory.cumulative.size() + 1);
        series.push_back(0.0);
        series.insert(series.end(), trajectory.cumulative.begin(), trajectory.cumulative.end());
        return estimate_rate(series, sample_interval, method);
    }
}
