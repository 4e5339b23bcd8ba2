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

#include "scene.hpp"
#include "error.hpp"

namespace thzvitals
{
    Vec3 Surface::normal() const
    {
        Vec3 n;
        n[axis] = 1.0;
        return n;
    }

    bool Surface::contains(const Vec3 &p, double tol) const
    {
        for (int a = 0; a < 3; ++a)
        {
            if (a == axis)
                continue;
            if (p[a] < lower[a] - tol || p[a] > upper[a] + tol)
                return false;
        }
        return true;
    }

    PatientPose PatientPose::facing(const Vec3 &chest_center, const Vec3 &reference_node, double gamma)
    {
        PatientPose pose;
        pose.chest_center = chest_center;
        pose.rotation_gamma = gamma;
        pose.motion_axis = normalized(rotate_z(normalized(reference_node - chest_center), gamma));
        return pose;
    }

    static bool inside_box(const Vec3 &p, const Vec3 &dims, double tol = 1e-9)
    {
        for (int a = 0; a < 3; ++a)
            if (p[a] < -tol || p[a] > dims[a] + tol)
                return false;
        return true;
    }

    void Scene::validate() const
    {
        for (int a = 0; a < 3; ++a)
            if (!(room_dims[a] > 0.0))
                fail(ErrorCode::invalid_argument, "room dimensions must be positive");
        for (const auto &s : surfaces)
        {
            s.material.validate();
            if (s.axis < 0 || s.axis > 2 || s.lower[s.axis] != s.upper[s.axis])
                fail(ErrorCode::invalid_argument, "surface '" + s.label + "' is not an axis-aligned rectangle");
            if (!inside_box(s.lower, room_dims) || !inside_box(s.upper, room_dims))
                fail(ErrorCode::invalid_argument, "surface '" + s.label + "' extends outside the room");
        }
        for (const auto &n : trx_nodes)
        {
            thzvitals::validate(n.beam);
            if (!inside_box(n.position, room_dims))
                fail(ErrorCode::invalid_argument, "TRX node outside the room");
        }
        if (!inside_box(patient.chest_center, room_dims))
            fail(ErrorCode::invalid_argument, "patient chest center outside the room");
        if (std::abs(patient.motion_axis.norm() - 1.0) > 1e-12)
            fail(ErrorCode::invalid_argument, "patient motion axis must have unit norm");
        if (!(body_radius >= 0.0))
            fail(ErrorCode::invalid_argument, "body radius must be non-negative");
        if (!(radio.carrier_hz > 0.0))
            fail(ErrorCode::invalid_argument, "carrier frequency must be positive");
        if (!(radio.dynamic_range_db > 0.0))
            fail(ErrorCode::invalid_argument, "dynamic range must be positive");
        radio.antenna.validate();
    }

    double Scene::wavelength() const
    {
        return speed_of_light / radio.carrier_hz;
    }

    std::vector<Surface> room_boundaries(const Vec3 &dims, const Material &walls, const Material &floor)
    {
        std::vector<Surface> out;
        const char *names[3][2] = {{"wall_x0", "wall_x1"}, {"wall_y0", "wall_y1"}, {"floor", "ceiling"}};
        for (int axis = 0; axis < 3; ++axis)
            for (int side = 0; side < 2; ++side)
            {
                Surface s;
                s.id = static_cast<int>(out.size());
                s.label = names[axis][side];
                s.axis = axis;
                s.lower = {0.0, 0.0, 0.0};
                s.upper = dims;
                s.lower[axis] = s.upper[axis] = side == 0 ? 0.0 : dims[axis];
                s.material = (axis == 2 && side == 0) ? floor : walls;
                out.push_back(s);
            }
        return out;
    }

    Scene reference_scene(double carrier_hz, double gamma)
    {
        Scene scene;
        scene.room_dims = {7.0, 7.0, 3.0};
        scene.surfaces = room_boundaries(scene.room_dims, builtin_material("plaster"), builtin_material("pvc"));

        const Vec3 trx{1.0, 3.5, reference_trx_height};
        const Vec3 chest = trx + Vec3{reference_los_length, 0.0, 0.0};
        scene.trx_nodes.push_back({trx, beam_toward(trx, chest)});
        scene.patient = PatientPose::facing(chest, trx, gamma);
        scene.radio.carrier_hz = carrier_hz;
        return scene;
    }
}
