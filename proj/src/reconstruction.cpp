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

#include "reconstruction.hpp"
#include "csv.hpp"
#include "error.hpp"

#include <istream>
#include <ostream>

namespace thzvitals
{
    namespace
    {
        Eigen::Vector3d to_eigen(const Vec3 &v) { return {v.x, v.y, v.z}; }

        void check_node_count(std::size_t n)
        {
            if (n < min_reconstruction_nodes)
                fail(ErrorCode::too_few_nodes, "reconstruction needs at least 3 nodes, got " + std::to_string(n));
        }
    }

    LinearSystem build_system(std::span<const NodeMeasurement> measurements)
    {
        const std::size_t n = measurements.size();
        check_node_count(n);

        std::vector<Vec3> r(n);
        std::vector<OrthonormalPair> basis(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            validate(measurements[i].beam);
            r[i] = reverse_direction(measurements[i].beam);
            basis[i] = orthogonal_basis(r[i]);
        }

        LinearSystem sys;
        const auto rows = static_cast<Eigen::Index>(3 * (n - 1));
        sys.a = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(2 * n));
        sys.b = Eigen::VectorXd::Zero(rows);

        const Eigen::Vector3d ref = to_eigen(r[0] * measurements[0].d_hat);
        for (std::size_t node = 1; node < n; ++node)
        {
            const auto row = static_cast<Eigen::Index>(3 * (node - 1));
            const auto col = static_cast<Eigen::Index>(2 * node);
            sys.b.segment<3>(row) = to_eigen(r[node] * measurements[node].d_hat) - ref;
            sys.a.block<3, 1>(row, 0) = to_eigen(basis[0].e_a);
            sys.a.block<3, 1>(row, 1) = to_eigen(basis[0].e_b);
            sys.a.block<3, 1>(row, col) = -to_eigen(basis[node].e_a);
            sys.a.block<3, 1>(row, col + 1) = -to_eigen(basis[node].e_b);
        }
        return sys;
    }

    ReconstructionResult reconstruct(std::span<const NodeMeasurement> measurements)
    {
        const std::size_t n = measurements.size();
        check_node_count(n);

        Eigen::MatrixXd directions(static_cast<Eigen::Index>(n), 3);
        for (std::size_t i = 0; i < n; ++i)
        {
            validate(measurements[i].beam);
            directions.row(static_cast<Eigen::Index>(i)) = to_eigen(reverse_direction(measurements[i].beam)).transpose();
        }
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(directions);
        const auto &sv = svd.singularValues();
        if (!(sv(2) >= degeneracy_threshold * sv(0)))
            fail(ErrorCode::degenerate_geometry, "beam directions do not span three dimensions");

        const LinearSystem sys = build_system(measurements);
        const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sys.a);
        const Eigen::VectorXd c = cod.solve(sys.b);

        ReconstructionResult result;
        result.coefficients_c.assign(c.data(), c.data() + c.size());
        result.residual_norm = (sys.a * c - sys.b).norm();

        Vec3 sum;
        for (std::size_t u = 0; u < n; ++u)
        {
            const Vec3 r = reverse_direction(measurements[u].beam);
            const OrthonormalPair basis = orthogonal_basis(r);
            const auto k = static_cast<Eigen::Index>(2 * u);
            const Vec3 v = r * measurements[u].d_hat + basis.e_a * c(k) + basis.e_b * c(k + 1);
            result.node_vectors.push_back(v);
            sum += v;
        }
        result.motion_vector = sum / static_cast<double>(n);
        result.magnitude = result.motion_vector.norm();
        return result;
    }

    std::vector<NodeMeasurement> forward_model(const Vec3 &true_motion, std::span<const BeamOrientation> beams)
    {
        if (beams.empty())
            fail(ErrorCode::invalid_argument, "forward model needs at least one beam");
        std::vector<NodeMeasurement> out;
        out.reserve(beams.size());
        for (std::size_t i = 0; i < beams.size(); ++i)
        {
            validate(beams[i]);
            out.push_back({static_cast<int>(i + 1), true_motion.dot(reverse_direction(beams[i])), beams[i]});
        }
        return out;
    }

    std::vector<NodeMeasurement> read_measurements_csv(std::istream &is)
    {
        const csv::Table table = csv::read_table(is);
        const std::size_t c_id = table.column("node_id"), c_d = table.column("d_hat_m"),
                          c_phi = table.column("phi_rad"), c_theta = table.column("theta_rad");
        std::vector<NodeMeasurement> out;
        for (const auto &row : table.rows)
        {
            NodeMeasurement m;
            m.node_id = static_cast<int>(csv::parse_integer(row[c_id], "node_id"));
            m.d_hat = csv::parse_real(row[c_d], "d_hat_m");
            m.beam.azimuth_phi = csv::parse_real(row[c_phi], "phi_rad");
            m.beam.elevation_theta = csv::parse_real(row[c_theta], "theta_rad");
            out.push_back(m);
        }
        return out;
    }

    void write_measurements_csv(std::ostream &os, std::span<const NodeMeasurement> measurements)
    {
        os << csv::version_line << '\n';
        os << "node_id,d_hat_m,phi_rad,theta_rad\n";
        for (const auto &m : measurements)
            os << m.node_id << ',' << csv::format_real(m.d_hat) << ',' << csv::format_real(m.beam.azimuth_phi) << ','
               << csv::format_real(m.beam.elevation_theta) << '\n';
    }
}
