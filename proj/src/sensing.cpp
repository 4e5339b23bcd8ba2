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

#include "sensing.hpp"
#include "csv.hpp"
#include "error.hpp"

#include <cmath>
#include <ostream>
#include <string>

namespace thzvitals
{
    std::vector<std::complex<double>> nudft(const ChannelImpulseResponse &cir, std::span<const double> freq_grid)
    {
        if (freq_grid.empty())
            fail(ErrorCode::invalid_argument, "frequency grid is empty");
        for (std::size_t k = 1; k < freq_grid.size(); ++k)
            if (!(freq_grid[k] > freq_grid[k - 1]))
                fail(ErrorCode::invalid_argument, "frequency grid must be strictly increasing");
        if (cir.paths.empty())
            fail(ErrorCode::empty_channel, "CIR " + std::to_string(cir.time_index) + " has no paths");

        std::vector<std::complex<double>> out(freq_grid.size());
        for (std::size_t k = 0; k < freq_grid.size(); ++k)
        {
            std::complex<double> acc{};
            for (const auto &p : cir.paths)
            {
                // Integer cycles are dropped before scaling so large f * tau keep full precision
                const double cycles = freq_grid[k] * p.delay_tau;
                const double frac = cycles - std::floor(cycles);
                acc += p.complex_gain * std::polar(1.0, -2.0 * pi * frac);
            }
            out[k] = acc;
        }
        return out;
    }

    std::vector<double> unwrap_series(std::span<const double> phases)
    {
        std::vector<double> out(phases.begin(), phases.end());
        double offset = 0.0; // accumulated multiple of 2 pi
        for (std::size_t i = 1; i < phases.size(); ++i)
        {
            const double d = phases[i] - phases[i - 1];
            const double turns = std::ceil((d - pi) / (2.0 * pi));
            offset -= turns;
            out[i] = phases[i] + 2.0 * pi * offset;
        }
        return out;
    }

    double phase_difference(const ChannelEstimate &prev, const ChannelEstimate &next)
    {
        if (next.time_index != prev.time_index + 1)
            fail(ErrorCode::index_mismatch, "estimates " + std::to_string(prev.time_index) + " and " +
                                                std::to_string(next.time_index) + " are not consecutive");
        if (next.carrier_freq != prev.carrier_freq)
            fail(ErrorCode::index_mismatch, "estimates use different carriers");
        return next.mean_phase - prev.mean_phase;
    }

    double estimate_step(double delta, double freq)
    {
        if (!(freq > 0.0))
            fail(ErrorCode::invalid_argument, "frequency must be positive");
        return delta * speed_of_light / (4.0 * pi * freq);
    }

    std::vector<double> frequency_grid(double carrier, std::size_t bins, double span_hz)
    {
        if (bins == 0 || !(carrier > 0.0) || !(span_hz >= 0.0) || (bins > 1 && span_hz == 0.0))
            fail(ErrorCode::invalid_argument, "frequency grid needs bins >= 1 and a positive span");
        if (span_hz / 2.0 >= carrier)
            fail(ErrorCode::invalid_argument, "frequency grid span exceeds the carrier");
        std::vector<double> grid(bins);
        if (bins == 1)
        {
            grid[0] = carrier;
            return grid;
        }
        const double step = span_hz / static_cast<double>(bins - 1);
        for (std::size_t k = 0; k < bins; ++k)
            grid[k] = carrier - span_hz / 2.0 + step * static_cast<double>(k);
        return grid;
    }

    TrackedTrajectory run_pipeline(std::span<const ChannelImpulseResponse> cirs, std::span<const double> freq_grid,
                                   const PipelineOptions &options)
    {
        if (cirs.size() < 2)
            fail(ErrorCode::invalid_argument, "tracking needs at least two CIR snapshots");
        const double carrier = cirs.front().carrier_freq;
        if (!(carrier > 0.0))
            fail(ErrorCode::invalid_argument, "CIR carrier frequency must be positive");
        for (const auto &c : cirs)
            if (c.carrier_freq != carrier)
                fail(ErrorCode::invalid_argument, "all CIRs must share one carrier frequency");

        const double quarter_wave = 0.25 * speed_of_light / carrier;
        for (std::size_t t = 1; t < cirs.size(); ++t)
            if (cirs[t].motion_offset && cirs[t - 1].motion_offset &&
                !(std::abs(*cirs[t].motion_offset - *cirs[t - 1].motion_offset) < quarter_wave))
                fail(ErrorCode::sampling_violation, "ground-truth step " + std::to_string(t) +
                                                        " reaches a quarter wavelength");

        std::vector<double> baseband(freq_grid.begin(), freq_grid.end());
        for (double &f : baseband)
            f -= carrier;

        std::vector<std::complex<double>> background;
        if (options.baseline && !options.baseline->paths.empty())
            background = nudft(*options.baseline, baseband);

        const std::size_t n_t = cirs.size(), n_f = baseband.size();
        std::vector<std::vector<double>> bin_series(n_f, std::vector<double>(n_t));
        for (std::size_t t = 0; t < n_t; ++t)
        {
            auto spectrum = nudft(cirs[t], baseband);
            for (std::size_t k = 0; k < n_f; ++k)
            {
                if (!background.empty())
                    spectrum[k] -= background[k];
                bin_series[k][t] = std::arg(spectrum[k]);
            }
        }
        for (auto &series : bin_series)
            series = unwrap_series(series);

        TrackedTrajectory out;
        out.estimates.resize(n_t);
        for (std::size_t t = 0; t < n_t; ++t)
        {
            ChannelEstimate &e = out.estimates[t];
            e.time_index = cirs[t].time_index;
            e.carrier_freq = carrier;
            e.per_freq_phase.resize(n_f);
            double sum = 0.0;
            for (std::size_t k = 0; k < n_f; ++k)
            {
                e.per_freq_phase[k] = bin_series[k][t];
                sum += bin_series[k][t];
            }
            e.mean_phase = sum / static_cast<double>(n_f);
        }

        double running = 0.0;
        for (std::size_t t = 1; t < n_t; ++t)
        {
            MotionStep step;
            step.from_index = out.estimates[t - 1].time_index;
            step.to_index = out.estimates[t].time_index;
            step.delta_phase = phase_difference(out.estimates[t - 1], out.estimates[t]);
            step.step_estimate = estimate_step(step.delta_phase, carrier);
            running += step.step_estimate;
            out.step_series.push_back(step);
            out.cumulative.push_back(running);
        }
        return out;
    }

    void write_trajectory_csv(std::ostream &os, const TrackedTrajectory &trajectory,
                              std::span<const double> ground_truth)
    {
        os << csv::version_line << '\n';
        os << "time_index,delta_phase_rad,step_est_m,cumulative_m,ground_truth_m\n";
        for (std::size_t i = 0; i < trajectory.step_series.size(); ++i)
        {
            const MotionStep &s = trajectory.step_series[i];
            os << s.to_index << ',' << csv::format_real(s.delta_phase) << ',' << csv::format_real(s.step_estimate)
               << ',' << csv::format_real(trajectory.cumulative[i]) << ',';
            const auto gt_index = static_cast<std::size_t>(s.to_index);
            if (gt_index < ground_truth.size())
                os << csv::format_real(ground_truth[gt_index]);
            os << '\n';
        }
    }
}
