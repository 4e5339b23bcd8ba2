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

#include "csv.hpp"
#include "error.hpp"
#include "experiment.hpp"

#include <fstream>
#include <sstream>

namespace thzvitals
{
    namespace
    {
        std::vector<double> numbers(const std::string &value, const std::string &what)
        {
            std::string text = value;
            for (char &c : text)
                if (c == ',')
                    c = ' ';
            std::istringstream is(text);
            std::vector<double> out;
            std::string token;
            while (is >> token)
                out.push_back(csv::parse_real(token, what));
            return out;
        }

        double number(const std::string &value, const std::string &what)
        {
            const auto v = numbers(value, what);
            if (v.size() != 1)
                fail(ErrorCode::parse_error, what + " expects a single number");
            return v[0];
        }

        Vec3 vec3(const std::string &value, const std::string &what)
        {
            const auto v = numbers(value, what);
            if (v.size() != 3)
                fail(ErrorCode::parse_error, what + " expects three numbers");
            return {v[0], v[1], v[2]};
        }

        bool boolean(const std::string &value, const std::string &what)
        {
            if (value == "true" || value == "1" || value == "yes" || value == "on")
                return true;
            if (value == "false" || value == "0" || value == "no" || value == "off")
                return false;
            fail(ErrorCode::parse_error, what + " expects true or false");
        }

        // "<axis> <plane> <a_min> <a_max> <b_min> <b_max> <material>", a/b the other axes in x, y, z order
        Surface surface(const std::string &value, int id)
        {
            std::istringstream is(value);
            std::string axis_name, material;
            std::string fields[5];
            is >> axis_name;
            for (auto &f : fields)
                is >> f;
            is >> material;
            if (!is || axis_name.size() != 1 || axis_name[0] < 'x' || axis_name[0] > 'z')
                fail(ErrorCode::parse_error, "scene.surface expects '<x|y|z> plane a_min a_max b_min b_max material'");
            Surface s;
            s.id = id;
            s.axis = axis_name[0] - 'x';
            s.label = "surface_" + std::to_string(id);
            s.material = builtin_material(material);
            double v[5];
            for (int i = 0; i < 5; ++i)
                v[i] = csv::parse_real(fields[i], "scene.surface");
            const int a = s.axis == 0 ? 1 : 0;
            const int b = s.axis == 2 ? 1 : 2;
            s.lower[s.axis] = s.upper[s.axis] = v[0];
            s.lower[a] = v[1], s.upper[a] = v[2];
            s.lower[b] = v[3], s.upper[b] = v[4];
            if (!(s.lower[a] < s.upper[a]) || !(s.lower[b] < s.upper[b]))
                fail(ErrorCode::parse_error, "scene.surface bounds must be increasing");
            return s;
        }

        std::vector<BeamOrientation> beams(const std::string &value)
        {
            std::vector<BeamOrientation> out;
            std::istringstream is(value);
            std::string item;
            while (std::getline(is, item, ';'))
            {
                if (csv::trim(item).empty())
                    continue;
                const auto v = numbers(item, "reconstruction.node_beams_deg");
                if (v.size() != 2)
                    fail(ErrorCode::parse_error, "each node beam is 'phi_deg theta_deg'");
                out.push_back({wrap_angle(deg_to_rad(v[0])), deg_to_rad(v[1])});
            }
            return out;
        }
    }

    void apply_setting(ExperimentConfig &cfg, const std::string &section, const std::string &key,
                       const std::string &value)
    {
        const std::string what = section + "." + key;
        SceneParameters &sc = cfg.scenario;
        if (section == "scene")
        {
            if (key == "room_m")
                sc.room_dims = vec3(value, what);
            else if (key == "trx_position_m")
                sc.trx_position = vec3(value, what);
            else if (key == "chest_center_m")
                sc.chest_center = vec3(value, what);
            else if (key == "body_radius_m")
                sc.body_radius = number(value, what);
            else if (key == "rotation_gamma_deg")
                sc.rotation_gamma = deg_to_rad(number(value, what));
            else if (key == "wall_material")
                sc.wall_material = builtin_material(value).name;
            else if (key == "floor_material")
                sc.floor_material = builtin_material(value).name;
            else if (key == "surface")
                sc.extra_surfaces.push_back(surface(value, static_cast<int>(6 + sc.extra_surfaces.size())));
            else
                fail(ErrorCode::parse_error, "unknown key " + what);
        }
        else if (section == "radio")
        {
            if (key == "carrier_hz")
                cfg.carrier_freq = number(value, what);
            else if (key == "antenna_gain_dbi")
                sc.antenna.boresight_gain_dbi = number(value, what);
            else if (key == "hpbw_deg")
                sc.antenna.hpbw_deg = number(value, what);
            else if (key == "tx_power_dbm")
                sc.antenna.tx_power_dbm = number(value, what);
            else if (key == "dynamic_range_db")
                sc.dynamic_range_db = number(value, what);
            else if (key == "max_bounces")
                cfg.max_bounces = static_cast<int>(csv::parse_integer(value, what));
            else if (key == "motion_model")
            {
                if (value == "plane_wave")
                    sc.motion_model = MotionModel::plane_wave;
                else if (value == "exact_geometry")
                    sc.motion_model = MotionModel::exact_geometry;
                else
                    fail(ErrorCode::parse_error, what + " expects plane_wave or exact_geometry");
            }
            else if (key == "include_clutter")
                sc.include_clutter = boolean(value, what);
            else
                fail(ErrorCode::parse_error, "unknown key " + what);
        }
        else if (section == "pipeline")
        {
            if (key == "bins")
                cfg.grid.bins = static_cast<std::size_t>(csv::parse_integer(value, what));
            else if (key == "span_hz")
                cfg.grid.span_hz = number(value, what);
            else if (key == "baseline_subtraction")
                cfg.baseline_subtraction = boolean(value, what);
            else
                fail(ErrorCode::parse_error, "unknown key " + what);
        }
        else if (section == "trajectory")
        {
            TrajectoryParameters &t = cfg.trajectory;
            if (key == "kind")
            {
                if (value == "linear_inhalation")
                    t.kind = TrajectoryKind::linear_inhalation;
                else if (value == "sinusoidal")
                    t.kind = TrajectoryKind::sinusoidal;
                else
                    fail(ErrorCode::parse_error, what + " expects linear_inhalation or sinusoidal");
            }
            else if (key == "step_m")
                t.step_m = number(value, what);
            else if (key == "max_displacement_m")
                t.max_displacement_m = number(value, what);
            else if (key == "rate_bpm")
                t.rate_bpm = number(value, what);
            else if (key == "amplitude_m")
                t.amplitude_m = number(value, what);
            else if (key == "sample_interval_s")
                t.sample_interval_s = number(value, what);
            else if (key == "duration_s")
                t.duration_s = number(value, what);
            else
                fail(ErrorCode::parse_error, "unknown key " + what);
        }
        else if (section == "experiment")
        {
            if (key == "rotation_gamma_deg")
            {
                cfg.rotation_gamma_set.clear();
                for (double g : numbers(value, what))
                    cfg.rotation_gamma_set.push_back(deg_to_rad(g));
            }
            else if (key == "output_dir")
                cfg.output_dir = value;
            else
                fail(ErrorCode::parse_error, "unknown key " + what);
        }
        else if (section == "noise")
        {
            if (!cfg.noise)
                cfg.noise = NoiseParameters{};
            if (key == "phase_noise_std_rad")
                cfg.noise->phase_noise_std = number(value, what);
            else if (key == "seed")
                cfg.noise->seed = static_cast<std::uint64_t>(csv::parse_integer(value, what));
            else
                fail(ErrorCode::parse_error, "unknown key " + what);
        }
        else if (section == "reconstruction")
        {
            if (key == "node_beams_deg")
                cfg.node_beams = beams(value);
            else if (key == "node_distance_m")
                cfg.node_distance_m = number(value, what);
            else
                fail(ErrorCode::parse_error, "unknown key " + what);
        }
        else
            fail(ErrorCode::parse_error, "unknown section [" + section + "]");
    }

    ExperimentConfig load_config(std::istream &is)
    {
        ExperimentConfig cfg;
        std::string line, section;
        std::size_t line_no = 0;
        while (std::getline(is, line))
        {
            ++line_no;
            const std::string_view v = csv::trim(line);
            if (v.empty() || v.front() == '#' || v.front() == ';')
                continue;
            if (v.front() == '[')
            {
                if (v.back() != ']')
                    fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": malformed section header");
                section = std::string(csv::trim(v.substr(1, v.size() - 2)));
                continue;
            }
            const std::size_t eq = v.find('=');
            if (eq == std::string_view::npos || section.empty())
                fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected 'key = value' in a section");
            std::string_view value = v.substr(eq + 1);
            if (const std::size_t hash = value.find('#'); hash != std::string_view::npos)
                value = value.substr(0, hash);
            try
            {
                apply_setting(cfg, section, std::string(csv::trim(v.substr(0, eq))), std::string(csv::trim(value)));
            }
            catch (const Error &e)
            {
                fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        return cfg;
    }

    ExperimentConfig load_config_file(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            fail(ErrorCode::io_error, "cannot open config file " + path.string());
        return load_config(in);
    }
}
