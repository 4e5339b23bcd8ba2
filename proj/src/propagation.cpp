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

#include "propagation.hpp"
#include "error.hpp"
#include "geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace thzvitals
{
    void Material::validate() const
    {
        if (!(eps_real >= 1.0) || !(eps_imag >= 0.0))
            fail(ErrorCode::invalid_argument, "material '" + name + "' needs eps_real >= 1 and eps_imag >= 0");
        if (!(sigma_h >= 0.0) || !(corr_length_lcr >= 0.0))
            fail(ErrorCode::invalid_argument, "material '" + name + "' has negative roughness parameters");
        if (surface_type == SurfaceType::smooth && sigma_h != 0.0)
            fail(ErrorCode::invalid_argument, "smooth material '" + name + "' must have sigma_h = 0");
    }

    const std::vector<Material> &builtin_materials()
    {
        static const std::vector<Material> table = {
            {"Plaster", 3.691, 0.217, SurfaceType::rough, 1.50e-3, 0.15e-3},
            {"PVC", 2.788, 0.069, SurfaceType::smooth, 0.0, 0.0},
            {"Wood", 1.734, 0.073, SurfaceType::smooth, 0.0, 0.0},
            {"Glass", 6.656, 0.539, SurfaceType::smooth, 0.0, 0.0},
        };
        return table;
    }

    const Material &builtin_material(std::string_view name)
    {
        auto lower = [](std::string_view s)
        {
            std::string out(s);
            std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c)
                           { return static_cast<char>(std::tolower(c)); });
            return out;
        };
        const std::string key = lower(name);
        for (const auto &m : builtin_materials())
            if (lower(m.name) == key)
                return m;
        fail(ErrorCode::invalid_argument, "unknown material '" + std::string(name) + "'");
    }

    std::complex<double> fresnel_reflection(const Material &material, double incidence_angle, double freq,
                                            Polarization polarization)
    {
        if (polarization != Polarization::vertical)
            fail(ErrorCode::unsupported_polarization, "only vertical polarization is modeled");
        if (!(incidence_angle >= 0.0 && incidence_angle < pi / 2.0))
            fail(ErrorCode::invalid_argument, "incidence angle must lie in [0, pi/2)");
        if (!(freq > 0.0))
            fail(ErrorCode::invalid_argument, "frequency must be positive");

        const std::complex<double> eps(material.eps_real, -material.eps_imag);
        const double c = std::cos(incidence_angle);
        const double s = std::sin(incidence_angle);
        const std::complex<double> root = std::sqrt(eps - s * s);
        return (eps * c - root) / (eps * c + root);
    }

    double roughness_attenuation(const Material &material, double incidence_angle, double freq)
    {
        if (!(freq > 0.0))
            fail(ErrorCode::invalid_argument, "frequency must be positive");
        if (material.sigma_h == 0.0)
            return 1.0;
        const double lambda = speed_of_light / freq;
        const double k = 4.0 * pi * material.sigma_h * std::cos(incidence_angle) / lambda;
        return std::exp(-0.5 * k * k);
    }

    void AntennaModel::validate() const
    {
        if (!(boresight_gain_dbi > 0.0))
            fail(ErrorCode::invalid_argument, "antenna boresight gain must be positive (dBi)");
        if (!(hpbw_deg > 0.0 && hpbw_deg < 180.0))
            fail(ErrorCode::invalid_argument, "antenna HPBW must lie in (0, 180) degrees");
    }

    double AntennaModel::log_gain(double off_boresight) const
    {
        const double ratio = off_boresight / deg_to_rad(hpbw_deg);
        return boresight_gain_dbi * std::log(10.0) / 10.0 - 4.0 * std::numbers::ln2 * ratio * ratio;
    }

    double AntennaModel::gain(double off_boresight) const
    {
        return std::exp(log_gain(off_boresight));
    }
}
