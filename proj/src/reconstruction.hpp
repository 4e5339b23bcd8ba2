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

#ifndef THZVITALS_RECONSTRUCTION_HPP
#define THZVITALS_RECONSTRUCTION_HPP

#include "geometry.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <vector>

namespace thzvitals
{
    struct NodeMeasurement
    {
        int node_id = 0;
        double d_hat = 0.0; // m, signed motion seen along the node's beam
        BeamOrientation beam;
    };

    struct ReconstructionResult
    {
        Vec3 motion_vector;               // m
        double magnitude = 0.0;           // m, Euclidean norm of motion_vector
        std::vector<double> coefficients_c; // 2N lost-component coefficients
        double residual_norm = 0.0;       // ||A c - b||
        std::vector<Vec3> node_vectors;   // per-node candidates averaged into motion_vector
    };

    struct LinearSystem
    {
        Eigen::MatrixXd a; // 3(N-1) x 2N
        Eigen::VectorXd b; // 3(N-1)
    };

    inline constexpr std::size_t min_reconstruction_nodes = 3;
    inline constexpr double degeneracy_threshold = 1e-9; // relative to the largest singular value

    /// Linear system b = A c coupling node 1 with every other node n.
    ///
    /// Block row n-1 of b holds d_n r_n - d_1 r_1; block row n-1 of A holds [e_A1, e_B1] in the
    /// first two columns and [-e_An, -e_Bn] in columns 2n-1, 2n. r_n is the reversed beam direction
    /// and (e_An, e_Bn) its orthogonal complement from orthogonal_basis().
    LinearSystem build_system(std::span<const NodeMeasurement> measurements);

    /// Full 3D motion from N >= 3 scalar node measurements.
    ///
    /// Solves the system in the least-squares sense (minimum norm when rank deficient) and averages
    /// the N per-node vectors d_u r_u + c_{2u-1} e_Au + c_{2u} e_Bu. Throws TooFewNodes for N < 3 and
    /// DegenerateGeometry when the reversed beam directions do not span 3D.
    ReconstructionResult reconstruct(std::span<const NodeMeasurement> measurements);

    // Ideal measurements d_n = true_motion . reverse_direction(beam_n)
    std::vector<NodeMeasurement> forward_model(const Vec3 &true_motion, std::span<const BeamOrientation> beams);

    // CSV columns node_id,d_hat_m,phi_rad,theta_rad
    std::vector<NodeMeasurement> read_measurements_csv(std::istream &is);
    void write_measurements_csv(std::ostream &os, std::span<const NodeMeasurement> measurements);
}

#endif
