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

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{
    struct Failure
    {
        tv_status status;
    };

    void check(tv_status s)
    {
        if (s != TV_OK)
            throw Failure{s};
    }

    struct Config
    {
        tv_config *handle = nullptr;
        Config() = default;
        Config(const Config &) = delete;
        Config &operator=(const Config &) = delete;
        ~Config() { tv_config_destroy(handle); }
    };

    struct Series
    {
        tv_cir_series *handle = nullptr;
        Series() = default;
        Series(const Series &) = delete;
        Series &operator=(const Series &) = delete;
        ~Series() { tv_cir_series_destroy(handle); }
    };

    struct Trajectory
    {
        tv_trajectory *handle = nullptr;
        Trajectory() = default;
        Trajectory(const Trajectory &) = delete;
        Trajectory &operator=(const Trajectory &) = delete;
        ~Trajectory() { tv_trajectory_destroy(handle); }
    };

    // Options shared by the simulating subcommands; applied on top of the config file
    struct SceneOptions
    {
        std::string config_path;
        std::optional<double> carrier;
        std::optional<int> max_bounces;
        std::vector<std::string> sets; // section.key=value

        void add_to(CLI::App *cmd)
        {
            cmd->add_option("-c,--config", config_path, "Configuration file")->check(CLI::ExistingFile);
            cmd->add_option("--carrier", carrier, "Carrier frequency in Hz");
            cmd->add_option("--max-bounces", max_bounces, "Wall reflections per path (0..3)");
            cmd->add_option("--set", sets, "Override a configuration entry, section.key=value");
        }

        void load(Config &cfg) const
        {
            if (config_path.empty())
                check(tv_config_create_default(&cfg.handle));
            else
                check(tv_config_load(config_path.c_str(), &cfg.handle));
            if (carrier)
                check(tv_config_set(cfg.handle, "radio", "carrier_hz", std::to_string(*carrier).c_str()));
            if (max_bounces)
                check(tv_config_set(cfg.handle, "radio", "max_bounces", std::to_string(*max_bounces).c_str()));
            for (const auto &s : sets)
            {
                const auto dot = s.find('.');
                const auto eq = s.find('=');
                if (dot == std::string::npos || eq == std::string::npos || eq < dot)
                    throw CLI::ValidationError("--set", "expected section.key=value, got '" + s + "'");
                check(tv_config_set(cfg.handle, s.substr(0, dot).c_str(), s.substr(dot + 1, eq - dot - 1).c_str(),
                                    s.substr(eq + 1).c_str()));
            }
        }
    };

    std::string print_real(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", v);
        return buf;
    }

    void print_json(char *json)
    {
        std::cout << json << '\n';
        tv_string_free(json);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Phase-based breathing motion sensing simulator", "thz-vitals"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tv_version()));

    SceneOptions sim_opts;
    double sim_gamma_deg = 0.0;
    std::string sim_output = "cirs.csv";
    auto *simulate = app.add_subcommand("simulate", "Write the channel snapshots of one trajectory");
    sim_opts.add_to(simulate);
    simulate->add_option("--gamma-deg", sim_gamma_deg, "Patient rotation in degrees");
    simulate->add_option("-o,--output", sim_output, "CIR CSV to write");

    SceneOptions track_opts;
    std::string track_input;
    std::string track_output;
    double track_gamma_deg = 0.0;
    auto *track = app.add_subcommand("track", "Run the phase tracking pipeline on a CIR file or a live simulation");
    track_opts.add_to(track);
    track->add_option("-i,--input", track_input, "CIR CSV; simulate from the configuration when omitted")
        ->check(CLI::ExistingFile);
    track->add_option("--gamma-deg", track_gamma_deg, "Patient rotation in degrees for live simulation");
    track->add_option("-o,--output", track_output, "Trajectory CSV to write");

    std::string recon_input;
    auto *recon = app.add_subcommand("reconstruct", "Recover the 3D motion from per-node measurements");
    recon->add_option("input", recon_input, "CSV with node_id,d_hat_m,phi_rad,theta_rad")
        ->required()
        ->check(CLI::ExistingFile);

    SceneOptions exp_opts;
    std::string recipe;
    std::string exp_output = ".";
    std::string exp_gammas;
    auto *experiment = app.add_subcommand("experiment", "Run a named experiment recipe");
    exp_opts.add_to(experiment);
    experiment->add_option("recipe", recipe, "Recipe name")
        ->required()
        ->check(CLI::IsMember(
            {"feasibility-300g", "feasibility-100g", "rotation-sweep", "reconstruction-demo", "rate-demo"}));
    experiment->add_option("-o,--output-dir", exp_output, "Directory for CSVs and the JSON report");
    experiment->add_option("--gamma-deg", exp_gammas, "Comma separated rotation set in degrees");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        if (*simulate)
        {
            Config cfg;
            sim_opts.load(cfg);
            Series series;
            check(tv_simulate(cfg.handle, sim_gamma_deg * M_PI / 180.0, &series.handle));
            check(tv_cir_series_write_csv(series.handle, sim_output.c_str()));
            std::cout << tv_cir_series_size(series.handle) << " snapshots written to " << sim_output << '\n';
        }
        else if (*track)
        {
            Config cfg;
            track_opts.load(cfg);
            Series series;
            if (track_input.empty())
                check(tv_simulate(cfg.handle, track_gamma_deg * M_PI / 180.0, &series.handle));
            else
                check(tv_cir_series_load_csv(track_input.c_str(), &series.handle));
            Trajectory traj;
            check(tv_track(cfg.handle, series.handle, &traj.handle));
            const size_t n = tv_trajectory_steps(traj.handle);
            std::vector<double> cumulative(n);
            check(tv_trajectory_get(traj.handle, nullptr, cumulative.data()));
            if (!track_output.empty())
                check(tv_trajectory_write_csv(traj.handle, track_output.c_str()));
            std::cout << n << " steps, cumulative motion " << print_real(n ? cumulative.back() : 0.0) << " m\n";
        }
        else if (*recon)
        {
            char *json = nullptr;
            check(tv_reconstruct_csv(recon_input.c_str(), &json));
            print_json(json);
        }
        else if (*experiment)
        {
            Config cfg;
            exp_opts.load(cfg);
            check(tv_config_set(cfg.handle, "experiment", "output_dir", exp_output.c_str()));
            if (!exp_gammas.empty())
                check(tv_config_set(cfg.handle, "experiment", "rotation_gamma_deg", exp_gammas.c_str()));
            char *json = nullptr;
            check(tv_run_experiment(cfg.handle, recipe.c_str(), &json));
            print_json(json);
        }
    }
    catch (const Failure &f)
    {
        std::cerr << "thz-vitals: " << tv_last_error() << '\n';
        return f.status == TV_ERR_PARSE ? 2 : 1;
    }
    catch (const CLI::Error &e)
    {
        std::cerr << "thz-vitals: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
