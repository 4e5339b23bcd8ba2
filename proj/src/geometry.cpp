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

#include "geometry.hpp"
#include "error.hpp"

#include <algorithm>

namespace thzvitals
{
    Vec3 normalized(const Vec3 &v)
    {
        const double n = v.norm();
        if (!(n >= 1e-9))
            fail(ErrorCode::zero_vector, "cannot normalize a vector of norm < 1e-9");
        return v / n;
    }

    bool BeamOrientation::valid() const
    {
        return std::isfinite(azimuth_phi) && std::isfinite(elevation_theta) &&
               azimuth_phi > -pi && azimuth_phi <= pi &&
               elevation_theta >= -pi / 2.0 && elevation_theta <= pi / 2.0;
    }

    void validate(const BeamOrientation &b)
    {
        if (!b.valid())
            fail(ErrorCode::invalid_argument, "beam orientation requires phi in (-pi, pi] and theta in [-pi/2, pi/2]");
    }

    Vec3 unit_vector(const BeamOrientation &b)
    {
        const double ct = std::cos(b.elevation_theta);
        return {std::cos(b.azimuth_phi) * ct, std::sin(b.azimuth_phi) * ct, std::sin(b.elevation_theta)};
    }

    Vec3 reverse_direction(const BeamOrientation &b)
    {
        return -unit_vector(b);
    }

    BeamOrientation beam_from_direction(const Vec3 &direction)
    {
        const Vec3 u = normalized(direction);
        BeamOrientation b;
        b.azimuth_phi = std::atan2(u.y, u.x);
        if (b.azimuth_phi <= -pi) // atan2 may return -pi for (-x, -0)
            b.azimuth_phi = pi;
        b.elevation_theta = std::asin(std::clamp(u.z, -1.0, 1.0));
        return b;
    }

    BeamOrientation beam_toward(const Vec3 &from, const Vec3 &to)
    {
        return beam_from_direction(to - from);
    }

    OrthonormalPair orthogonal_basis(const Vec3 &r)
    {
        const double n = r.norm();
        if (!(n >= 1e-9))
            fail(ErrorCode::zero_vector, "orthogonal_basis requires a non-zero direction");
        const Vec3 u = r / n;

        const Vec3 helper = std::abs(u.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
        const Vec3 e_a = normalized(helper - u * helper.dot(u));
        const Vec3 e_b = u.cross(e_a);
        return {e_a, e_b};
    }

    double project_motion(double d, double gamma)
    {
        return d * std::cos(gamma);
    }

    Vec3 rotate_z(const Vec3 &v, double angle)
    {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
    }

    double wrap_angle(double angle)
    {
        double w = std::remainder(angle, 2.0 * pi); // [-pi, pi]
        if (w <= -pi)
            w += 2.0 * pi;
        return w;
    }
}
