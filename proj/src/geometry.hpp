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

#ifndef THZVITALS_GEOMETRY_HPP
#define THZVITALS_GEOMETRY_HPP

#include <cmath>
#include <numbers>

namespace thzvitals
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double pi = std::numbers::pi;

    inline constexpr double deg_to_rad(double deg) { return deg * pi / 180.0; }
    inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / pi; }

    // Cartesian vector in room coordinates (meters), or a direction (unitless)
    struct Vec3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;

        constexpr Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
        constexpr Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
        constexpr Vec3 operator-() const { return {-x, -y, -z}; }
        constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
        constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
        constexpr Vec3 &operator+=(const Vec3 &o)
        {
            x += o.x, y += o.y, z += o.z;
            return *this;
        }
        constexpr bool operator==(const Vec3 &) const = default;

        constexpr double operator[](int axis) const { return axis == 0 ? x : (axis == 1 ? y : z); }
        constexpr double &operator[](int axis) { return axis == 0 ? x : (axis == 1 ? y : z); }

        constexpr double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
        constexpr Vec3 cross(const Vec3 &o) const
        {
            return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
        }
        double norm() const { return std::sqrt(dot(*this)); }
    };

    inline constexpr Vec3 operator*(double s, const Vec3 &v) { return v * s; }

    // Throws ZeroVector for vectors shorter than 1e-9
    Vec3 normalized(const Vec3 &v);

    // Antenna beam pointing direction; phi from +x counterclockwise in the x/y-plane,
    // theta from the x/y-plane toward +z.
    struct BeamOrientation
    {
        double azimuth_phi = 0.0;
        double elevation_theta = 0.0;

        bool valid() const;
    };

    // Throws InvalidArgument when phi is outside (-pi, pi] or theta outside [-pi/2, pi/2]
    void validate(const BeamOrientation &b);

    Vec3 unit_vector(const BeamOrientation &b);

    // Direction from the sensed point back toward the node: -unit_vector(b)
    Vec3 reverse_direction(const BeamOrientation &b);

    // Inverse of unit_vector for a non-zero direction
    BeamOrientation beam_from_direction(const Vec3 &direction);

    // Beam orientation of an antenna at `from` aimed at `to`
    BeamOrientation beam_toward(const Vec3 &from, const Vec3 &to);

    struct OrthonormalPair
    {
        Vec3 e_a;
        Vec3 e_b;
    };

    /// Two unit vectors completing r to a right-handed orthonormal frame (e_a, e_b, r).
    ///
    /// A helper axis is chosen as +z when |r.z| < 0.9 and +x otherwise; e_a is the normalized
    /// component of that axis orthogonal to r and e_b = r x e_a. The result depends only on r.
    OrthonormalPair orthogonal_basis(const Vec3 &r);

    // Component of a motion of magnitude d seen along a propagation path rotated by gamma
    double project_motion(double d, double gamma);

    // Rotation about the vertical (z) axis
    Vec3 rotate_z(const Vec3 &v, double angle);

    // Wraps an angle into (-pi, pi]
    double wrap_angle(double angle);
}

#endif
