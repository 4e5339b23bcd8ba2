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

#ifndef THZVITALS_CHANNEL_HPP
#define THZVITALS_CHANNEL_HPP

#include "scene.hpp"

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace thzvitals
{
    // One propagation path of the two-way (monostatic) channel
    struct PathComponent
    {
        double delay_tau = 0.0;                 // s, path_length / c0
        std::complex<double> complex_gain{};    // linear, includes the carrier phase exp(-j 2 pi f L / c0)
        double path_length = 0.0;               // m, full round trip
        int bounce_count = 0;                   // wall reflections, excluding the patient scatter
        std::vector<int> segment_list;          // surface ids in propagation order
        bool via_patient = true;                // false for static clutter returns
    };

    struct ChannelImpulseResponse
    {
        int time_index = 0;
        std::vector<PathComponent> paths;
        double carrier_freq = 0.0;
        bool line_of_sight = true;
        std::optional<double> motion_offset; // ground-truth chest offset, when known
    };

    struct PathTrace
    {
        std::vector<PathComponent> paths;
        bool line_of_sight = true; // false when the direct TRX -> chest segment is blocked
    };

    inline constexpr int max_supported_bounces = 3;

    /// Image-method enumeration of TRX -> (walls)* -> chest -> (walls)* -> TRX paths with at most
    /// `max_bounces` wall reflections in total, at the scene's current chest position.
    ///
    /// Gain per path: lambda / (4 pi L) free-space spreading, sqrt(G_tx G_rx) at the departure and
    /// arrival angles, the product of Fresnel coefficients and roughness factors, and the carrier
    /// phase. The chest is a unit point scatterer. Paths weaker than the strongest one by more than
    /// the scene's dynamic range are dropped. Throws EmptyChannel if nothing survives.
    PathTrace trace_paths(const Scene &scene, std::size_t node_index, int max_bounces = 1);

    // Channel snapshot with the chest displaced by `motion_offset` (m, in [0, 3 cm]) along the motion axis
    ChannelImpulseResponse synthesize_cir(const Scene &scene, std::size_t node_index, double motion_offset,
                                          int max_bounces = 1, int time_index = 0);

    // One snapshot per offset; throws SamplingViolation if any step between offsets reaches lambda/4
    std::vector<ChannelImpulseResponse> synthesize_trajectory(const Scene &scene, std::size_t node_index,
                                                              std::span<const double> offsets, int max_bounces = 1);

    // Static returns of the empty room (no patient) seen by a node; may be empty
    ChannelImpulseResponse baseline_cir(const Scene &scene, std::size_t node_index, int max_bounces = 1);

    // Strongest path power at the receiver, dBm
    double strongest_path_power_dbm(const ChannelImpulseResponse &cir, const AntennaModel &antenna);

    // CSV: time_index,delay_s,gain_re,gain_im,path_length_m,bounce_count (one row per path)
    void write_cir_csv(std::ostream &os, std::span<const ChannelImpulseResponse> cirs);

    // Carrier comes from the "# carrier_hz=" comment line unless `carrier_hz` is given
    std::vector<ChannelImpulseResponse> read_cir_csv(std::istream &is, std::optional<double> carrier_hz = std::nullopt);
}

#endif
