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

#include "breathing.hpp"
#include "error.hpp"
#include "scene.hpp"
#include "sensing.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace thzvitals;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    // Direct summation in extended precision
    std::vector<std::complex<long double>> brute_force_dft(const ChannelImpulseResponse &cir,
                                                           const std::vector<double> &freqs)
    {
        const long double two_pi = 2.0L * std::acos(-1.0L);
        std::vector<std::complex<long double>> out;
        for (double f : freqs)
        {
            std::complex<long double> acc = 0.0L;
            for (const auto &p : cir.paths)
            {
                const long double arg = -two_pi * static_cast<long double>(f) * static_cast<long double>(p.delay_tau);
                acc += std::complex<long double>(p.complex_gain.real(), p.complex_gain.imag()) *
                       std::complex<long double>(std::cos(arg), std::sin(arg));
            }
            out.push_back(acc);
        }
        return out;
    }

    ChannelImpulseResponse random_cir(std::mt19937_64 &rng, std::size_t paths)
    {
        std::uniform_real_distribution<double> delay(0.0, 100e-9), re(-1.0, 1.0);
        ChannelImpulseResponse cir;
        for (std::size_t p = 0; p < paths; ++p)
        {
            PathComponent c;
            c.delay_tau = delay(rng);
            c.complex_gain = {re(rng), re(rng)};
            cir.paths.push_back(c);
        }
        return cir;
    }

    std::vector<double> random_grid(std::mt19937_64 &rng, std::size_t n)
    {
        std::uniform_real_distribution<double> f(-1e9, 1e9);
        std::vector<double> g(n);
        for (double &v : g)
            v = f(rng);
        std::sort(g.begin(), g.end());
        return g;
    }
}

TEST_CASE("NUDFT matches direct summation", "[sensing]")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> np(1, 8), nf(1, 32);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto cir = random_cir(rng, np(rng));
        const auto grid = random_grid(rng, nf(rng));
        const auto h = nudft(cir, grid);
        const auto ref = brute_force_dft(cir, grid);
        for (std::size_t k = 0; k < grid.size(); ++k)
            worst = std::max(worst, static_cast<double>(std::abs(std::complex<long double>(h[k]) - ref[k])));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("NUDFT basics", "[sensing]")
{
    ChannelImpulseResponse cir;
    cir.paths.push_back({1e-8, {0.25, -0.5}});
    const std::vector<double> dc{0.0};
    CHECK(nudft(cir, dc)[0] == std::complex<double>(0.25, -0.5));
    // Half a cycle of delay at 50 MHz flips the sign
    const std::vector<double> f{50e6};
    CHECK_THAT(std::abs(nudft(cir, f)[0] + std::complex<double>(0.25, -0.5)), WithinAbs(0.0, 1e-15));

    const std::vector<double> unsorted{2.0, 1.0};
    CHECK_THROWS_AS(nudft(cir, unsorted), Error);
    ChannelImpulseResponse empty;
    try
    {
        nudft(empty, dc);
        FAIL("expected EmptyChannel");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::empty_channel);
    }
}

TEST_CASE("Unwrapping", "[sensing]")
{
    const std::vector<double> jump{3.0, -3.0};
    const auto u = unwrap_series(jump);
    CHECK(u[0] == 3.0);
    CHECK_THAT(u[1], WithinAbs(-3.0 + 2.0 * pi, 1e-15));

    const std::vector<double> single_wrap{0.0, pi / 2.0, pi, -pi / 2.0};
    const auto sw = unwrap_series(single_wrap);
    CHECK(sw[2] == pi);
    CHECK_THAT(sw[3], WithinAbs(3.0 * pi / 2.0, 1e-15));

    const std::vector<double> constant(10, 1.25);
    CHECK(unwrap_series(constant) == constant);

    std::vector<double> ramp_wrapped;
    for (int i = 0; i < 100; ++i)
        ramp_wrapped.push_back(wrap_angle(0.4 * i));
    const auto ramp = unwrap_series(ramp_wrapped);
    for (int i = 0; i < 100; ++i)
        CHECK_THAT(ramp[i], WithinAbs(0.4 * i, 1e-12));

    const std::vector<double> empty;
    CHECK(unwrap_series(empty).empty());

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> step(-0.99 * pi, 0.99 * pi), start(-50.0, 50.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> truth{start(rng)};
        for (int i = 0; i < 300; ++i)
            truth.push_back(truth.back() + step(rng));
        std::vector<double> wrapped;
        for (double v : truth)
            wrapped.push_back(std::arg(std::polar(1.0, v)));
        const auto un = unwrap_series(wrapped);
        const double shift = un[0] - truth[0];
        for (std::size_t i = 0; i < truth.size(); ++i)
            REQUIRE_THAT(un[i] - truth[i], WithinAbs(shift, 1e-9));
        for (std::size_t i = 1; i < un.size(); ++i)
        {
            const double d = un[i] - un[i - 1];
            REQUIRE((d > -pi && d <= pi));
        }
    }
}

TEST_CASE("Phase to displacement", "[sensing]")
{
    CHECK_THAT(estimate_step(2.0944, 300e9), WithinRel(1.66551755025e-4, 1e-10));
    CHECK_THAT(estimate_step(2.0958450219516818, 300e9), WithinRel(0.03 / 180.0, 1e-14));
    CHECK_THAT(estimate_step(2.0 * pi / 3.0, 300e9), WithinRel(speed_of_light / 300e9 / 6.0, 1e-14));
    CHECK_THAT(estimate_step(pi, 300e9), WithinRel(2.4982704833e-4, 1e-10));
    CHECK(estimate_step(-1.0, 100e9) < 0.0);
    CHECK_THROWS_AS(estimate_step(1.0, 0.0), Error);

    ChannelEstimate a, b;
    a.time_index = 3;
    b.time_index = 4;
    a.carrier_freq = b.carrier_freq = 300e9;
    a.mean_phase = 0.5;
    b.mean_phase = 1.25;
    CHECK(phase_difference(a, b) == 0.75);
    ChannelEstimate c = a;
    c.time_index = 4;
    CHECK(phase_difference(a, c) == 0.0);
    a.mean_phase = 0.10;
    b.mean_phase = 0.35;
    CHECK_THAT(phase_difference(a, b), WithinAbs(0.25, 1e-15));
    b.time_index = 5;
    try
    {
        phase_difference(a, b);
        FAIL("expected IndexMismatch");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::index_mismatch);
    }
}

TEST_CASE("Frequency grid", "[sensing]")
{
    const auto g = frequency_grid(300e9);
    REQUIRE(g.size() == 64);
    CHECK(g.front() == 299e9);
    CHECK_THAT(g.back(), WithinRel(301e9, 1e-15));
    CHECK(frequency_grid(100e9, 1)[0] == 100e9);
    CHECK_THROWS_AS(frequency_grid(100e9, 0), Error);
    CHECK_THROWS_AS(frequency_grid(1e9, 8, 4e9), Error);
}

TEST_CASE("Pipeline on the direct path is exact", "[sensing]")
{
    for (double carrier : {100e9, 300e9})
    {
        const Scene s = reference_scene(carrier);
        const auto traj = reference_inhalation(carrier);
        const auto cirs = synthesize_trajectory(s, 0, traj.offsets, 0);
        const auto grid = frequency_grid(carrier);
        const auto tracked = run_pipeline(cirs, grid);
        REQUIRE(tracked.step_series.size() == traj.offsets.size() - 1);
        REQUIRE(tracked.estimates.size() == traj.offsets.size());
        double worst = 0.0;
        for (std::size_t i = 0; i < tracked.step_series.size(); ++i)
        {
            const auto &st = tracked.step_series[i];
            CHECK(st.from_index == static_cast<int>(i));
            CHECK(st.to_index == static_cast<int>(i + 1));
            worst = std::max(worst, std::abs(st.step_estimate - (traj.offsets[i + 1] - traj.offsets[i])));
        }
        CHECK(worst < 1e-9);
        CHECK_THAT(tracked.cumulative.back(), WithinAbs(0.03, 1e-9));
    }
}

TEST_CASE("Pipeline special cases", "[sensing]")
{
    const Scene s = reference_scene();
    const auto grid = frequency_grid(300e9);

    // Step of a sixth of a wavelength toward the node
    const double step = s.wavelength() / 6.0;
    const std::vector<double> one{0.0, step};
    const auto t1 = run_pipeline(synthesize_trajectory(s, 0, one, 0), grid);
    CHECK_THAT(t1.step_series[0].delta_phase, WithinAbs(2.0 * pi / 3.0, 1e-9));
    CHECK_THAT(t1.step_series[0].step_estimate, WithinAbs(step, 1e-12));

    // Identical snapshots
    auto same = synthesize_trajectory(s, 0, std::vector<double>{0.0, 0.0}, 0);
    CHECK(run_pipeline(same, grid).step_series[0].step_estimate == 0.0);

    // Sideways motion is invisible
    const Scene side = reference_scene(300e9, pi / 2.0);
    const auto traj = reference_inhalation(300e9);
    const auto t90 = run_pipeline(synthesize_trajectory(side, 0, traj.offsets, 0), grid);
    for (const auto &st : t90.step_series)
        CHECK(std::abs(st.step_estimate) < 1e-6);

    // Half a wavelength leaves the two-way phase unchanged
    const auto a = synthesize_cir(s, 0, 0.001, 0);
    const auto b = synthesize_cir(s, 0, 0.001 + s.wavelength() / 2.0, 0);
    CHECK_THAT(std::abs(a.paths[0].complex_gain / std::abs(a.paths[0].complex_gain) -
                        b.paths[0].complex_gain / std::abs(b.paths[0].complex_gain)),
               WithinAbs(0.0, 1e-9));
}

TEST_CASE("Baseline subtraction removes static clutter", "[sensing]")
{
    Scene s = reference_scene();
    s.radio.antenna.hpbw_deg = 120.0;
    s.radio.dynamic_range_db = 1000.0;
    s.body_radius = 0.0; // the empty-room baseline has no body to shadow the wall behind it
    const auto traj = reference_inhalation(300e9);
    const auto grid = frequency_grid(300e9);
    auto worst = [&](const TrackedTrajectory &t)
    {
        double w = 0.0;
        for (std::size_t i = 0; i < t.step_series.size(); ++i)
            w = std::max(w, std::abs(t.step_series[i].step_estimate - (traj.offsets[i + 1] - traj.offsets[i])));
        return w;
    };

    const auto clean = run_pipeline(synthesize_trajectory(s, 0, traj.offsets, 1), grid);
    s.radio.include_clutter = true;
    const auto cluttered = synthesize_trajectory(s, 0, traj.offsets, 1);
    const auto raw = run_pipeline(cluttered, grid);
    const auto base = baseline_cir(s, 0, 1);
    PipelineOptions opt;
    opt.baseline = &base;
    const auto subtracted = run_pipeline(cluttered, grid, opt);

    CHECK(worst(raw) > worst(clean));
    CHECK_THAT(worst(subtracted), WithinAbs(worst(clean), 1e-12));
}

TEST_CASE("Pipeline argument checks", "[sensing]")
{
    const Scene s = reference_scene();
    const std::vector<double> offsets{0.0, 1e-4};
    auto cirs = synthesize_trajectory(s, 0, offsets, 0);
    const auto grid = frequency_grid(300e9);

    CHECK_THROWS_AS(run_pipeline(std::span(cirs).first(1), grid), Error);

    auto mixed = cirs;
    mixed[1].carrier_freq = 100e9;
    CHECK_THROWS_AS(run_pipeline(mixed, grid), Error);

    auto fast = cirs;
    fast[1].motion_offset = 3e-4; // beyond a quarter wavelength at 300 GHz
    try
    {
        run_pipeline(fast, grid);
        FAIL("expected SamplingViolation");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::sampling_violation);
    }

    auto gap = cirs;
    gap[1].time_index = 7;
    CHECK_THROWS_AS(run_pipeline(gap, grid), Error);
}

TEST_CASE("Trajectory CSV", "[sensing]")
{
    const Scene s = reference_scene();
    const std::vector<double> offsets{0.0, 1e-4, 2e-4};
    const auto tracked = run_pipeline(synthesize_trajectory(s, 0, offsets, 0), frequency_grid(300e9));
    std::ostringstream os;
    write_trajectory_csv(os, tracked, offsets);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "# thz-vitals-sim v1");
    std::getline(is, line);
    CHECK(line == "time_index,delta_phase_rad,step_est_m,cumulative_m,ground_truth_m");
    int rows = 0;
    while (std::getline(is, line))
        ++rows;
    CHECK(rows == 2);
}
