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

#ifndef THZVITALS_BREATHING_HPP
#define THZVITALS_BREATHING_HPP

#include "sensing.hpp"

#include <span>
#include <vector>

namespace thzvitals
{
    enum class TrajectoryKind
    {
        linear_inhalation,
        sinusoidal
    };

    // Ground-truth chest displacement from rest, one sample per channel snapshot
    struct BreathingTrajectory
    {
        std::vector<double> offsets; // m
        double step_size = 0.0;      // m, largest step between samples
        TrajectoryKind kind = TrajectoryKind::linear_inhalation;
        double rate_bpm = 0.0;        // sinusoidal only
        double sample_interval = 0.0; // s, sinusoidal only
    };

    inline constexpr double max_chest_displacement = 0.03;  // m, deep breath
    inline constexpr double min_breath_amplitude = 0.003;   // m, shallow breath

    // Uniform ramp 0 : step : max_displacement (inclusive)
    BreathingTrajectory linear_inhalation(double step, double max_displacement = max_chest_displacement);

    // 61 samples at 500 um for 100 GHz, 181 samples at 3 cm / 180 for 300 GHz
    BreathingTrajectory reference_inhalation(double carrier_hz);

    // offsets[k] = amp/2 * (1 - cos(2 pi rate/60 * k * dt)), k = 0 .. round(duration/dt) - 1
    BreathingTrajectory sinusoidal_breathing(double rate_bpm, double amplitude, double sample_interval,
                                             double duration);

    // Throws SamplingViolation if any step reaches a quarter wavelength at the carrier
    void check_sampling(const BreathingTrajectory &trajectory, double carrier_hz);

    enum class RateMethod
    {
        peak_counting,
        spectral
    };

    struct RateEstimate
    {
        double rate_bpm = 0.0;
        RateMethod method = RateMethod::peak_counting;
    };

    /// Breathing rate of a displacement series sampled every `sample_interval` seconds.
    ///
    /// peak_counting keeps one maximum per excursion above half of the peak-to-peak range and uses the
    /// spacing between the first and last peak. spectral picks the strongest non-DC bin of the
    /// linearly detrended series, refined by parabolic interpolation. Both throw InsufficientData
    /// when fewer than two breathing periods are detected.
    RateEstimate estimate_rate(std::span<const double> series, double sample_interval, RateMethod method);

    // Uses the tracked cumulative displacement with a leading zero for the first snapshot
    RateEstimate estimate_rate(const TrackedTrajectory &trajectory, double sample_interval, RateMethod method);
}

#endif
