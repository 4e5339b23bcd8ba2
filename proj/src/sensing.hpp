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

#ifndef THZVITALS_SENSING_HPP
#define THZVITALS_SENSING_HPP

#include "channel.hpp"

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace thzvitals
{
    // Phase summary of one two-way channel estimate
    struct ChannelEstimate
    {
        int time_index = 0;
        double mean_phase = 0.0;            // rad, mean of per_freq_phase
        std::vector<double> per_freq_phase; // rad, unwrapped over time per bin
        double carrier_freq = 0.0;
    };

    struct MotionStep
    {
        int from_index = 0;
        int to_index = 1;
        double delta_phase = 0.0;   // rad
        double step_estimate = 0.0; // m, positive = path shortening (chest expanding toward the node)
    };

    struct TrackedTrajectory
    {
        std::vector<double> cumulative; // m, cumulative[k] = sum of step_series[0..k]
        std::vector<MotionStep> step_series;
        std::vector<ChannelEstimate> estimates;
    };

    // H(f_k) = sum_p gain_p exp(-j 2 pi f_k tau_p); throws EmptyChannel for a CIR without paths
    std::vector<std::complex<double>> nudft(const ChannelImpulseResponse &cir, std::span<const double> freq_grid);

    // Adds multiples of 2 pi so that successive differences fall in (-pi, pi]; output[0] = input[0]
    std::vector<double> unwrap_series(std::span<const double> phases);

    // Two-way phase change between consecutive estimates, in the unwrapped domain
    double phase_difference(const ChannelEstimate &prev, const ChannelEstimate &next);

    // delta * c0 / (4 pi f)
    double estimate_step(double delta, double freq);

    // `bins` evenly spaced frequencies over carrier +- span/2 (a single bin sits on the carrier)
    std::vector<double> frequency_grid(double carrier, std::size_t bins = 64, double span_hz = 2e9);

    struct PipelineOptions
    {
        // Empty-room response subtracted from every snapshot before the phase extraction
        const ChannelImpulseResponse *baseline = nullptr;
    };

    /// Phase-difference motion tracking over a series of CIR snapshots.
    ///
    /// Each snapshot is converted to the frequency domain on `freq_grid` (absolute frequencies; the
    /// CIR gains already carry the carrier phase, so the transform runs on the offsets from the
    /// carrier). The phase of every bin is unwrapped over time, averaged over bins per snapshot, and
    /// consecutive differences are converted to displacement steps at the carrier frequency.
    TrackedTrajectory run_pipeline(std::span<const ChannelImpulseResponse> cirs, std::span<const double> freq_grid,
                                   const PipelineOptions &options = {});

    // time_index,delta_phase_rad,step_est_m,cumulative_m,ground_truth_m; one row per step.
    // ground_truth (indexed by time index, relative to the first snapshot) may be empty.
    void write_trajectory_csv(std::ostream &os, const TrackedTrajectory &trajectory,
                              std::span<const double> ground_truth = {});
}

#endif
