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

#ifndef THZVITALS_SCENE_HPP
#define THZVITALS_SCENE_HPP

#include "geometry.hpp"
#include "propagation.hpp"

#include <string>
#include <vector>

namespace thzvitals
{
    // Finite axis-aligned rectangle; lower[axis] == upper[axis] is the plane coordinate
    struct Surface
    {
        int id = 0;
        std::string label;
        int axis = 0; // 0 = x, 1 = y, 2 = z (plane normal)
        Vec3 lower;
        Vec3 upper;
        Material material;

        double plane() const { return lower[axis]; }
        Vec3 normal() const;
        bool contains(const Vec3 &p, double tol = 1e-9) const;
    };

    // Monostatic transceiver: co-located TX and RX sharing one beam
    struct TrxNode
    {
        Vec3 position;
        BeamOrientation beam;
    };

    struct PatientPose
    {
        Vec3 chest_center;
        double rotation_gamma = 0.0; // rad, about the vertical axis
        Vec3 motion_axis;            // unit chest-normal direction

        // Pose whose motion axis at gamma = 0 points from the chest toward `reference_node`
        static PatientPose facing(const Vec3 &chest_center, const Vec3 &reference_node, double gamma);
    };

    enum class MotionModel
    {
        plane_wave,    // path topology frozen at rest, lengths perturbed to first order in the offset
        exact_geometry // chest point moved and all paths retraced
    };

    struct RadioSettings
    {
        double carrier_hz = 300e9;
        AntennaModel antenna;
        double dynamic_range_db = 105.0;
        MotionModel motion_model = MotionModel::plane_wave;
        bool include_clutter = false; // static TRX -> walls -> TRX returns
    };

    struct Scene
    {
        Vec3 room_dims{7.0, 7.0, 3.0};
        std::vector<Surface> surfaces;
        std::vector<TrxNode> trx_nodes;
        PatientPose patient;
        double body_radius = 0.15; // m, occludes rays that pass the chest without scattering
        RadioSettings radio;

        void validate() const;
        double wavelength() const;
    };

    // Six boundary surfaces of a room spanning [0, dims]; walls and ceiling share `walls`
    std::vector<Surface> room_boundaries(const Vec3 &dims, const Material &walls, const Material &floor);

    inline constexpr double reference_trx_height = 1.3; // m
    inline constexpr double reference_los_length = 2.55; // m, TRX to chest center

    /// Default patient room: 7 x 7 x 3 m, plaster walls and ceiling, PVC floor, one TRX at
    /// (1.0, 3.5, 1.3) m aimed at the chest center 2.55 m away along +x at the same height.
    Scene reference_scene(double carrier_hz = 300e9, double gamma = 0.0);
}

#endif
