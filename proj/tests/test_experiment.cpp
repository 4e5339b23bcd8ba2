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

#include "catch_amalgamated.hpp"

#include "csv.hpp"
#include "error.hpp"
#include "experiment.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

using namespace thzvitals;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    std::filesystem::path scratch(const std::string &name)
    {
        const auto dir = std::filesystem::temp_directory_path() / ("thzvitals_test_" + name);
        std::filesystem::remove_all(dir);
        return dir;
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    ErrorCode code_of(auto &&f)
    {
        try
        {
            f();
        }
        catch (const Error &e)
        {
            return e.code();
        }
        return ErrorCode{};
    }

    double max_step_error(const ExperimentReport &r) { return r.step_error.value().max_abs; }
}

TEST_CASE("Configuration defaults", "[experiment]")
{
    const ExperimentConfig cfg;
    REQUIRE(cfg.rotation_gamma_set.size() == 5);
    CHECK(cfg.rotation_gamma_set[0] == 0.0);
    CHECK_THAT(cfg.rotation_gamma_set[1], WithinAbs(pi / 8.0, 1e-15));
    CHECK_THAT(cfg.rotation_gamma_set[2], WithinAbs(pi / 4.0, 1e-15));
    CHECK_THAT(cfg.rotation_gamma_set[3], WithinAbs(pi / 3.0, 1e-15));
    CHECK_THAT(cfg.rotation_gamma_set[4], WithinAbs(pi / 2.0, 1e-15));
    CHECK(cfg.carrier_freq == 300e9);
    CHECK(cfg.max_bounces == 1);
    CHECK_FALSE(cfg.noise.has_value());
    CHECK(default_node_beams().size() == 4);

    const Scene s = build_scene(cfg.scenario, cfg.carrier_freq, 0.0);
    CHECK(s.surfaces.size() == 6);
    CHECK_THAT((s.trx_nodes[0].position - s.patient.chest_center).norm(), WithinAbs(2.55, 1e-12));
}

TEST_CASE("Configuration file", "[experiment]")
{
    std::istringstream is(R"(# comment
[radio]
carrier_hz = 100e9   # inline comment
max_bounces = 2
hpbw_deg = 30
motion_model = exact_geometry

; another comment
[scene]
rotation_gamma_deg = 45
surface = x 5.0 1.0 2.0 0.0 2.0 glass
surface = z 0.8 2.0 3.0 2.0 3.0 wood

[experiment]
rotation_gamma_deg = 0, 90

[noise]
phase_noise_std_rad = 0.01
seed = 42

[reconstruction]
node_beams_deg = 0 0; 90 10; 180 -20
)");
    const auto cfg = load_config(is);
    CHECK(cfg.carrier_freq == 100e9);
    CHECK(cfg.max_bounces == 2);
    CHECK(cfg.scenario.antenna.hpbw_deg == 30.0);
    CHECK(cfg.scenario.motion_model == MotionModel::exact_geometry);
    CHECK_THAT(cfg.scenario.rotation_gamma, WithinAbs(pi / 4.0, 1e-15));
    REQUIRE(cfg.scenario.extra_surfaces.size() == 2);
    const auto &glass = cfg.scenario.extra_surfaces[0];
    CHECK(glass.axis == 0);
    CHECK(glass.lower == Vec3{5.0, 1.0, 0.0});
    CHECK(glass.upper == Vec3{5.0, 2.0, 2.0});
    CHECK(glass.material.name == "Glass");
    const auto &table = cfg.scenario.extra_surfaces[1];
    CHECK(table.lower == Vec3{2.0, 2.0, 0.8});
    CHECK(table.upper == Vec3{3.0, 3.0, 0.8});
    REQUIRE(cfg.rotation_gamma_set.size() == 2);
    CHECK_THAT(cfg.rotation_gamma_set[1], WithinAbs(pi / 2.0, 1e-15));
    REQUIRE(cfg.noise.has_value());
    CHECK(cfg.noise->seed == 42);
    REQUIRE(cfg.node_beams.size() == 3);
    CHECK_THAT(cfg.node_beams[2].azimuth_phi, WithinAbs(pi, 1e-15));
    CHECK_THAT(cfg.node_beams[2].elevation_theta, WithinAbs(-pi / 9.0, 1e-15));

    const Scene s = build_scene(cfg.scenario, cfg.carrier_freq, 0.0);
    CHECK(s.surfaces.size() == 8);
    CHECK(s.surfaces[7].id == 7);

    auto parse = [](const std::string &text)
    {
        std::istringstream in(text);
        return code_of([&] { load_config(in); });
    };
    CHECK(parse("[radio]\nfrequency = 3\n") == ErrorCode::parse_error);
    CHECK(parse("[nowhere]\nx = 1\n") == ErrorCode::parse_error);
    CHECK(parse("[radio]\ncarrier_hz = fast\n") == ErrorCode::parse_error);
    CHECK(parse("carrier_hz = 1\n") == ErrorCode::parse_error);
    CHECK(parse("[radio\n") == ErrorCode::parse_error);
    CHECK(code_of([] { load_config_file("/nonexistent/file.ini"); }) == ErrorCode::io_error);
}

TEST_CASE("Reference configuration file parses", "[experiment]")
{
    const auto cfg = load_config_file(THZVITALS_SOURCE_DIR "/configs/reference.ini");
    const ExperimentConfig defaults;
    CHECK(cfg.carrier_freq == defaults.carrier_freq);
    CHECK(cfg.max_bounces == defaults.max_bounces);
    CHECK(cfg.rotation_gamma_set.size() == defaults.rotation_gamma_set.size());
}

TEST_CASE("Feasibility runs", "[experiment]")
{
    ExperimentConfig cfg;
    const auto r300 = run_feasibility(cfg);
    CHECK(r300.snapshots == 181);
    CHECK(max_step_error(r300) < 1e-6);
    CHECK(r300.step_error->max_abs >= r300.step_error->mean_abs);
    CHECK(r300.step_error->mean_abs >= 0.0);

    for (double carrier : {100e9, 300e9})
    {
        cfg.carrier_freq = carrier;
        cfg.max_bounces = 0;
        CHECK(max_step_error(run_feasibility(cfg)) < 1e-9);
    }

    cfg.scenario.rotation_gamma = 0.1;
    CHECK(code_of([&] { run_feasibility(cfg); }) == ErrorCode::invalid_argument);
}

TEST_CASE("Rotation sweep follows the projection law", "[experiment]")
{
    ExperimentConfig cfg;
    cfg.max_bounces = 0;
    const auto r = run_rotation_sweep(cfg);
    REQUIRE(r.per_gamma.size() == 5);
    for (const auto &g : r.per_gamma)
    {
        CHECK_THAT(g.final_tracked_m, WithinAbs(0.03 * std::cos(g.gamma), 1e-4));
        CHECK_THAT(g.expected_m, WithinAbs(0.03 * std::cos(g.gamma), 1e-15));
    }
    CHECK(std::abs(r.per_gamma.back().final_tracked_m) < 1e-3);

    cfg.rotation_gamma_set.clear();
    CHECK(code_of([&] { run_rotation_sweep(cfg); }) == ErrorCode::invalid_argument);
}

TEST_CASE("Multi-node demo recovers the full motion", "[experiment]")
{
    ExperimentConfig cfg;
    cfg.rotation_gamma_set = {pi / 3.0, pi / 2.0};
    const auto r = run_reconstruction_demo(cfg, default_node_beams());
    REQUIRE(r.per_gamma.size() == 2);
    CHECK_THAT(r.per_gamma[0].recovered_m.value(), WithinRel(0.03, 0.01));
    CHECK_THAT(r.per_gamma[0].final_tracked_m, WithinAbs(0.015, 1e-4));
    CHECK_THAT(r.per_gamma[1].recovered_m.value(), WithinRel(0.03, 0.01));
    CHECK(std::abs(r.per_gamma[1].final_tracked_m) < 1e-3);
    CHECK(r.reconstruction_error_m.value() < 1e-9);

    const auto beams = default_node_beams();
    CHECK(code_of([&] { run_reconstruction_demo(cfg, std::span(beams).first(2)); }) == ErrorCode::too_few_nodes);

    const std::vector<BeamOrientation> flat{{0.0, 0.0}, {pi / 2.0, 0.0}, {pi, 0.0}, {-pi / 2.0, 0.0}};
    CHECK(code_of([&] { run_reconstruction_demo(cfg, flat); }) == ErrorCode::degenerate_geometry);
}

TEST_CASE("Rate demo with tracking noise", "[experiment]")
{
    ExperimentConfig cfg;
    cfg.max_bounces = 0;
    cfg.trajectory.rate_bpm = 12.0;
    cfg.noise = NoiseParameters{0.05, 7};
    const auto r = run_rate_demo(cfg);
    CHECK_THAT(r.rate_peak_bpm.value(), WithinAbs(12.0, 0.5));
    CHECK_THAT(r.rate_spectral_bpm.value(), WithinAbs(12.0, 0.5));
    CHECK(r.rate_truth_bpm.value() == 12.0);
}

TEST_CASE("Phase noise sets the step error spread", "[experiment]")
{
    const double sigma = 0.05;
    ExperimentConfig cfg;
    cfg.max_bounces = 0;
    const Scene scene = build_scene(cfg.scenario, cfg.carrier_freq, 0.0);
    const auto traj = build_trajectory(cfg.trajectory, cfg.carrier_freq);
    const auto grid = frequency_grid(cfg.carrier_freq);

    std::vector<double> errors;
    for (std::uint64_t seed = 1; errors.size() < 10000; ++seed)
    {
        cfg.noise = NoiseParameters{sigma, seed};
        const auto tracked = run_pipeline(simulate_node(cfg, scene, 0, traj.offsets), grid);
        for (std::size_t i = 0; i < tracked.step_series.size(); ++i)
            errors.push_back(tracked.step_series[i].step_estimate - (traj.offsets[i + 1] - traj.offsets[i]));
    }
    double mean = 0.0, sq = 0.0;
    for (double e : errors)
        mean += e;
    mean /= static_cast<double>(errors.size());
    for (double e : errors)
        sq += (e - mean) * (e - mean);
    const double std_dev = std::sqrt(sq / static_cast<double>(errors.size() - 1));
    const double expected = sigma * speed_of_light / (4.0 * pi * cfg.carrier_freq);
    CHECK_THAT(std_dev, WithinRel(expected, 0.2));
}

TEST_CASE("Outputs are deterministic and self-consistent", "[experiment]")
{
    ExperimentConfig cfg;
    cfg.noise = NoiseParameters{0.02, 5};
    const auto a = scratch("det_a"), b = scratch("det_b");
    cfg.output_dir = a;
    const auto ra = run_recipe("feasibility-300g", cfg);
    cfg.output_dir = b;
    run_recipe("feasibility-300g", cfg);
    REQUIRE(ra.files.size() == 2);
    CHECK(ra.files[0] == "steps_300ghz.csv");
    CHECK(slurp(a / "steps_300ghz.csv") == slurp(b / "steps_300ghz.csv"));
    CHECK_FALSE(slurp(a / "steps_300ghz.csv").empty());

    // Recompute the step errors from the CSV alone
    std::ifstream in(a / "steps_300ghz.csv");
    const auto table = csv::read_table(in);
    const auto est = table.column("step_est_m"), gt = table.column("ground_truth_m");
    std::vector<double> errors;
    double prev = 0.0;
    for (const auto &row : table.rows)
    {
        const double truth = csv::parse_real(row[gt], "gt");
        errors.push_back(csv::parse_real(row[est], "est") - (truth - prev));
        prev = truth;
    }
    const auto stats = error_stats(errors);
    CHECK_THAT(stats.max_abs, WithinRel(ra.step_error->max_abs, 1e-12));
    CHECK_THAT(stats.rmse, WithinRel(ra.step_error->rmse, 1e-12));

    const auto json = nlohmann::json::parse(slurp(a / "report_feasibility-300g.json"));
    CHECK(json["recipe"] == "feasibility-300g");
    CHECK(json.contains("ray_tracer_reference"));
    CHECK(json["step_error_m"]["max_abs"].get<double>() == ra.step_error->max_abs);

    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST_CASE("Recipes write one file per rotation", "[experiment]")
{
    ExperimentConfig cfg;
    cfg.carrier_freq = 100e9;
    cfg.output_dir = scratch("sweep");
    const auto r = run_recipe("rotation-sweep", cfg);
    std::size_t csvs = 0;
    for (const auto &entry : std::filesystem::directory_iterator(cfg.output_dir))
        csvs += entry.path().extension() == ".csv";
    CHECK(csvs == 5);
    CHECK(r.files.size() == 6);
    std::filesystem::remove_all(cfg.output_dir);

    CHECK(code_of([&] { run_recipe("nonsense", cfg); }) == ErrorCode::invalid_argument);
}

TEST_CASE("Error statistics", "[experiment]")
{
    const std::vector<double> e{1.0, -3.0, 2.0};
    const auto s = error_stats(e);
    CHECK(s.max_abs == 3.0);
    CHECK(s.mean_abs == 2.0);
    CHECK_THAT(s.rmse, WithinRel(std::sqrt(14.0 / 3.0), 1e-15));
    const auto z = error_stats({});
    CHECK(z.max_abs == 0.0);
}
