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

#ifndef THZVITALS_EXPERIMENT_HPP
#define THZVITALS_EXPERIMENT_HPP

#include "breathing.hpp"
#include "channel.hpp"
#include "reconstruction.hpp"
#include "sensing.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace thzvitals
{
    struct SceneParameters
    {
        Vec3 room_dims{7.0, 7.0, 3.0};
        Vec3 trx_position{1.0, 3.5, reference_trx_height};
        Vec3 chest_center{1.0 + reference_los_length, 3.5, reference_trx_height};
        double body_radius = 0.15;
        double rotation_gamma = 0.0; // rad
        std::string wall_material = "plaster";
        std::string floor_material = "pvc";
        std::vector<Surface> extra_surfaces;
        AntennaModel antenna;
        double dynamic_range_db = 105.0;
        MotionModel motion_model = MotionModel::plane_wave;
        bool include_clutter = false;
    };

    struct TrajectoryParameters
    {
        TrajectoryKind kind = TrajectoryKind::linear_inhalation;
        double step_m = 0.0; // 0 selects the reference ramp of the carrier
        double max_displacement_m = max_chest_displacement;
        double rate_bpm = 15.0;
        double amplitude_m = 0.01;
        double sample_interval_s = 0.02;
        double duration_s = 60.0;
    };

    struct GridParameters
    {
        std::size_t bins = 64;
        double span_hz = 2e9;
    };

    struct NoiseParameters
    {
        double phase_noise_std = 0.0; // rad, standard deviation of each measured phase difference
        std::uint64_t seed = 1;
    };

    struct ExperimentConfig
    {
        SceneParameters scenario;
        double carrier_freq = 300e9;
        TrajectoryParameters trajectory;
        std::vector<double> rotation_gamma_set; // rad
        int max_bounces = 1;
        GridParameters grid;
        bool baseline_subtraction = false;
        std::optional<NoiseParameters> noise;
        std::vector<BeamOrientation> node_beams; // empty selects default_node_beams()
        double node_distance_m = reference_los_length;
        std::filesystem::path output_dir; // empty: no files written

        ExperimentConfig();
    };

    // Rotation set 0, 22.5, 45, 60, 90 degrees
    std::vector<double> default_rotation_set();

    // Four beams aimed at the default chest center from distinct room corners at different heights
    std::vector<BeamOrientation> default_node_beams();

    // Sets one "section.key = value" entry; throws ParseError on unknown keys or bad values
    void apply_setting(ExperimentConfig &cfg, const std::string &section, const std::string &key,
                       const std::string &value);

    /// Parses the key = value configuration format.
    ///
    /// Lines are "[section]" headers, "key = value" pairs, blank lines, or comments starting with
    /// '#' or ';'. Keys may repeat where they describe lists (scene.surface).
    ExperimentConfig load_config(std::istream &is);
    ExperimentConfig load_config_file(const std::filesystem::path &path);

    Scene build_scene(const SceneParameters &params, double carrier_hz, double gamma);
    BreathingTrajectory build_trajectory(const TrajectoryParameters &params, double carrier_hz);

    struct ErrorStats
    {
        double max_abs = 0.0;
        double mean_abs = 0.0;
        double rmse = 0.0;
    };

    ErrorStats error_stats(std::span<const double> errors);

    struct GammaOutcome
    {
        double gamma = 0.0;
        double final_tracked_m = 0.0;     // single-node cumulative motion at the last snapshot
        double expected_m = 0.0;          // projected ground truth
        double ground_truth_m = 0.0;      // total chest displacement
        std::optional<double> recovered_m; // multi-node reconstruction, signed
        std::optional<double> reconstruction_error_m;
        std::string csv_file;
    };

    struct ExperimentReport
    {
        std::string recipe;
        double carrier_hz = 0.0;
        int max_bounces = 0;
        std::size_t snapshots = 0;
        std::size_t min_paths = 0;
        std::size_t max_paths = 0;
        double strongest_path_dbm = 0.0;
        std::optional<ErrorStats> step_error;
        std::vector<GammaOutcome> per_gamma;
        std::optional<double> reconstruction_error_m;
        std::optional<double> rate_truth_bpm;
        std::optional<double> rate_peak_bpm;
        std::optional<double> rate_spectral_bpm;
        std::vector<std::string> files;
        double runtime_s = 0.0;

        nlohmann::json to_json() const;
    };

    // Single node, gamma = 0: per-step errors over the configured trajectory
    ExperimentReport run_feasibility(const ExperimentConfig &cfg);

    // Single node, cumulative tracked motion for every rotation in the set
    ExperimentReport run_rotation_sweep(const ExperimentConfig &cfg);

    // N >= 3 nodes aimed along `node_beams`, LOS channels, motion recovered per step for every rotation
    ExperimentReport run_reconstruction_demo(const ExperimentConfig &cfg, std::span<const BeamOrientation> node_beams);

    // Sinusoidal breathing through the single-node pipeline, rate by both estimators
    ExperimentReport run_rate_demo(const ExperimentConfig &cfg);

    // Named recipes: feasibility-300g, feasibility-100g, rotation-sweep, reconstruction-demo, rate-demo.
    // Writes report_<recipe>.json next to the CSVs when an output directory is set.
    ExperimentReport run_recipe(const std::string &recipe, const ExperimentConfig &cfg);

    // Snapshots of one node along a trajectory with the configured noise applied
    std::vector<ChannelImpulseResponse> simulate_node(const ExperimentConfig &cfg, const Scene &scene,
                                                      std::size_t node_index, std::span<const double> offsets);

    // Multiplies every snapshot by exp(j e_k), e_k ~ N(0, std / sqrt(2)), so phase differences have `std`
    void apply_phase_noise(std::vector<ChannelImpulseResponse> &cirs, const NoiseParameters &noise);
}

#endif
