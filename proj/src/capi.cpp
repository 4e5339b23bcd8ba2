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

#include "thzvitals/thzvitals.h"

#include "error.hpp"
#include "experiment.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>

struct tv_config
{
    thzvitals::ExperimentConfig cfg;
};

struct tv_cir_series
{
    std::vector<thzvitals::ChannelImpulseResponse> cirs;
};

struct tv_trajectory
{
    thzvitals::TrackedTrajectory traj;
};

namespace
{
    thread_local std::string last_error;

    template <typename F>
    tv_status guarded(F &&f)
    {
        last_error.clear();
        try
        {
            f();
            return TV_OK;
        }
        catch (const thzvitals::Error &e)
        {
            last_error = e.what();
            return static_cast<tv_status>(static_cast<int>(e.code()));
        }
        catch (const std::bad_alloc &)
        {
            last_error = "out of memory";
        }
        catch (const std::exception &e)
        {
            last_error = e.what();
        }
        catch (...)
        {
            last_error = "unknown failure";
        }
        return TV_ERR_INTERNAL;
    }

    void require(bool condition, const char *what)
    {
        if (!condition)
            thzvitals::fail(thzvitals::ErrorCode::invalid_argument, what);
    }

    char *duplicate(const std::string &s)
    {
        char *out = static_cast<char *>(std::malloc(s.size() + 1));
        if (!out)
            throw std::bad_alloc();
        std::memcpy(out, s.c_str(), s.size() + 1);
        return out;
    }

    std::ofstream open_for_writing(const char *path)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            thzvitals::fail(thzvitals::ErrorCode::io_error, std::string("cannot write ") + path);
        return out;
    }
}

extern "C"
{
    const char *tv_version(void) { return "0.1.0"; }

    const char *tv_last_error(void) { return last_error.c_str(); }

    const char *tv_status_name(tv_status status)
    {
        if (status == TV_OK)
            return "OK";
        if (status >= TV_ERR_INVALID_ARGUMENT && status <= TV_ERR_IO)
            return thzvitals::error_code_name(static_cast<thzvitals::ErrorCode>(status));
        return "Internal";
    }

    void tv_string_free(char *s) { std::free(s); }

    tv_status tv_config_create_default(tv_config **out)
    {
        return guarded([&] {
            require(out, "null output pointer");
            *out = new tv_config();
        });
    }

    tv_status tv_config_load(const char *path, tv_config **out)
    {
        return guarded([&] {
            require(path && out, "null argument");
            auto c = std::make_unique<tv_config>();
            c->cfg = thzvitals::load_config_file(path);
            *out = c.release();
        });
    }

    tv_status tv_config_set(tv_config *cfg, const char *section, const char *key, const char *value)
    {
        return guarded([&] {
            require(cfg && section && key && value, "null argument");
            thzvitals::apply_setting(cfg->cfg, section, key, value);
        });
    }

    void tv_config_destroy(tv_config *cfg) { delete cfg; }

    tv_status tv_simulate(const tv_config *cfg, double gamma_rad, tv_cir_series **out)
    {
        return guarded([&] {
            require(cfg && out, "null argument");
            const auto &c = cfg->cfg;
            const auto scene = thzvitals::build_scene(c.scenario, c.carrier_freq, gamma_rad);
            const auto traj = thzvitals::build_trajectory(c.trajectory, c.carrier_freq);
            auto s = std::make_unique<tv_cir_series>();
            s->cirs = thzvitals::simulate_node(c, scene, 0, traj.offsets);
            *out = s.release();
        });
    }

    tv_status tv_cir_series_load_csv(const char *path, tv_cir_series **out)
    {
        return guarded([&] {
            require(path && out, "null argument");
            std::ifstream in(path, std::ios::binary);
            if (!in)
                thzvitals::fail(thzvitals::ErrorCode::io_error, std::string("cannot open ") + path);
            auto s = std::make_unique<tv_cir_series>();
            s->cirs = thzvitals::read_cir_csv(in);
            *out = s.release();
        });
    }

    tv_status tv_cir_series_write_csv(const tv_cir_series *series, const char *path)
    {
        return guarded([&] {
            require(series && path, "null argument");
            auto out = open_for_writing(path);
            thzvitals::write_cir_csv(out, series->cirs);
        });
    }

    size_t tv_cir_series_size(const tv_cir_series *series) { return series ? series->cirs.size() : 0; }

    void tv_cir_series_destroy(tv_cir_series *series) { delete series; }

    tv_status tv_track(const tv_config *cfg, const tv_cir_series *series, tv_trajectory **out)
    {
        return guarded([&] {
            require(series && out, "null argument");
            require(!series->cirs.empty(), "empty snapshot series");
            const thzvitals::GridParameters grid = cfg ? cfg->cfg.grid : thzvitals::GridParameters{};
            const auto freqs = thzvitals::frequency_grid(series->cirs.front().carrier_freq, grid.bins, grid.span_hz);
            auto t = std::make_unique<tv_trajectory>();
            t->traj = thzvitals::run_pipeline(series->cirs, freqs);
            *out = t.release();
        });
    }

    size_t tv_trajectory_steps(const tv_trajectory *traj) { return traj ? traj->traj.step_series.size() : 0; }

    tv_status tv_trajectory_get(const tv_trajectory *traj, double *step_m, double *cumulative_m)
    {
        return guarded([&] {
            require(traj, "null trajectory");
            const auto &t = traj->traj;
            for (std::size_t i = 0; i < t.step_series.size(); ++i)
            {
                if (step_m)
                    step_m[i] = t.step_series[i].step_estimate;
                if (cumulative_m)
                    cumulative_m[i] = t.cumulative[i];
            }
        });
    }

    tv_status tv_trajectory_write_csv(const tv_trajectory *traj, const char *path)
    {
        return guarded([&] {
            require(traj && path, "null argument");
            auto out = open_for_writing(path);
            thzvitals::write_trajectory_csv(out, traj->traj);
        });
    }

    void tv_trajectory_destroy(tv_trajectory *traj) { delete traj; }

    tv_status tv_reconstruct(const tv_node_measurement *nodes, size_t count, tv_reconstruction *out)
    {
        return guarded([&] {
            require(out && (nodes || count == 0), "null argument");
            std::vector<thzvitals::NodeMeasurement> m;
            for (size_t i = 0; i < count; ++i)
                m.push_back({nodes[i].node_id, nodes[i].d_hat_m, {nodes[i].phi_rad, nodes[i].theta_rad}});
            const auto r = thzvitals::reconstruct(m);
            out->motion[0] = r.motion_vector.x;
            out->motion[1] = r.motion_vector.y;
            out->motion[2] = r.motion_vector.z;
            out->magnitude = r.magnitude;
            out->residual_norm = r.residual_norm;
        });
    }

    tv_status tv_reconstruct_csv(const char *path, char **json_out)
    {
        return guarded([&] {
            require(path && json_out, "null argument");
            std::ifstream in(path, std::ios::binary);
            if (!in)
                thzvitals::fail(thzvitals::ErrorCode::io_error, std::string("cannot open ") + path);
            const auto m = thzvitals::read_measurements_csv(in);
            const auto r = thzvitals::reconstruct(m);
            nlohmann::json j;
            j["nodes"] = m.size();
            j["motion_m"] = {r.motion_vector.x, r.motion_vector.y, r.motion_vector.z};
            j["magnitude_m"] = r.magnitude;
            j["residual_norm"] = r.residual_norm;
            j["coefficients"] = r.coefficients_c;
            *json_out = duplicate(j.dump(2));
        });
    }

    tv_status tv_run_experiment(const tv_config *cfg, const char *recipe, char **json_out)
    {
        return guarded([&] {
            require(cfg && recipe, "null argument");
            const auto report = thzvitals::run_recipe(recipe, cfg->cfg);
            if (json_out)
                *json_out = duplicate(report.to_json().dump(2));
        });
    }

    tv_status tv_unit_vector(double phi_rad, double theta_rad, double out[3])
    {
        return guarded([&] {
            require(out, "null output");
            const thzvitals::BeamOrientation b{phi_rad, theta_rad};
            thzvitals::validate(b);
            const auto v = thzvitals::unit_vector(b);
            out[0] = v.x;
            out[1] = v.y;
            out[2] = v.z;
        });
    }

    tv_status tv_estimate_step(double delta_rad, double freq_hz, double *out_m)
    {
        return guarded([&] {
            require(out_m, "null output");
            *out_m = thzvitals::estimate_step(delta_rad, freq_hz);
        });
    }

    tv_status tv_nudft(const double *delay_s, const double *gain_re, const double *gain_im, size_t n_paths,
                       const double *freq_hz, size_t n_freq, double *out_re, double *out_im)
    {
        return guarded([&] {
            require((n_paths == 0 || (delay_s && gain_re && gain_im)) && freq_hz && out_re && out_im,
                    "null argument");
            thzvitals::ChannelImpulseResponse cir;
            for (size_t p = 0; p < n_paths; ++p)
            {
                thzvitals::PathComponent c;
                c.delay_tau = delay_s[p];
                c.complex_gain = {gain_re[p], gain_im[p]};
                cir.paths.push_back(c);
            }
            const auto h = thzvitals::nudft(cir, std::span<const double>(freq_hz, n_freq));
            for (size_t k = 0; k < n_freq; ++k)
            {
                out_re[k] = h[k].real();
                out_im[k] = h[k].imag();
            }
        });
    }

    tv_status tv_unwrap(const double *phases, size_t n, double *out)
    {
        return guarded([&] {
            require((phases && out) || n == 0, "null argument");
            const auto u = thzvitals::unwrap_series(std::span<const double>(phases, n));
            std::copy(u.begin(), u.end(), out);
        });
    }
}
