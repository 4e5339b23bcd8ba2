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

#ifndef THZVITALS_PROPAGATION_HPP
#define THZVITALS_PROPAGATION_HPP

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace thzvitals
{
    enum class SurfaceType
    {
        rough,
        smooth
    };

    // Dielectric surface description; permittivity is eps_real - j * eps_imag
    struct Material
    {
        std::string name;
        double eps_real = 1.0;
        double eps_imag = 0.0;
        SurfaceType surface_type = SurfaceType::smooth;
        double corr_length_lcr = 0.0; // m
        double sigma_h = 0.0;         // m, height standard deviation

        void validate() const;
    };

    // Plaster, PVC, Wood, Glass
    const std::vector<Material> &builtin_materials();

    // Case-insensitive lookup in builtin_materials(); throws InvalidArgument for unknown names
    const Material &builtin_material(std::string_view name);

    enum class Polarization
    {
        vertical,
        horizontal
    };

    /// Specular reflection coefficient of a half-space for vertical (TM) polarization.
    ///
    /// Uses Gamma = (eps cos(a) - sqrt(eps - sin^2(a))) / (eps cos(a) + sqrt(eps - sin^2(a))), which
    /// gives (sqrt(eps) - 1) / (sqrt(eps) + 1) at normal incidence and tends to 1 for a perfect
    /// conductor. Permittivities are frequency independent; `freq` is only validated.
    std::complex<double> fresnel_reflection(const Material &material, double incidence_angle, double freq,
                                            Polarization polarization = Polarization::vertical);

    // Specular attenuation exp(-g/2), g = (4 pi sigma_h cos(a) / lambda)^2; exactly 1 for smooth surfaces
    double roughness_attenuation(const Material &material, double incidence_angle, double freq);

    // Horn antenna approximated by a Gaussian main lobe, identical for TX and RX
    struct AntennaModel
    {
        double boresight_gain_dbi = 25.0;
        double hpbw_deg = 10.0;
        double tx_power_dbm = -10.0;

        void validate() const;

        // Natural log of the linear power gain at off-boresight angle psi (rad)
        double log_gain(double off_boresight) const;

        // Linear power gain at off-boresight angle psi (rad)
        double gain(double off_boresight) const;
    };
}

#endif
