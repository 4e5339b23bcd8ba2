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

#include "channel.hpp"
#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace thzvitals
{
    namespace
    {
        // Segment endpoints closer than this to a plane count as touching it
        constexpr double plane_eps = 1e-12;

        // TRX -> (reflections) -> target, built with the image method
        struct Leg
        {
            std::vector<int> surfaces; // indices into scene.surfaces
            std::vector<Vec3> points;  // start, reflection points..., target
            double length = 0.0;
            std::complex<double> reflection{1.0, 0.0};
            double roughness = 1.0;
            Vec3 start_dir;  // unit, leaving the start point
            Vec3 target_dir; // unit, from the target back toward the previous point
        };

        // Geometric path before amplitude filtering
        struct Candidate
        {
            double rest_length = 0.0;
            double sensitivity = 0.0; // path shortening per meter of chest offset
            double log_amp_no_spread = 0.0;
            std::complex<double> reflection_phase{1.0, 0.0};
            int bounce_count = 0;
            std::vector<int> segment_list;
            bool via_patient = true;
        };

        Vec3 mirror(const Vec3 &p, const Surface &s)
        {
            Vec3 out = p;
            out[s.axis] = 2.0 * s.plane() - p[s.axis];
            return out;
        }

        double segment_point_distance(const Vec3 &a, const Vec3 &b, const Vec3 &p)
        {
            const Vec3 ab = b - a;
            const double len2 = ab.dot(ab);
            double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            return (a + ab * t - p).norm();
        }

        bool segment_hits_surface(const Vec3 &a, const Vec3 &b, const Surface &s)
        {
            const double da = a[s.axis] - s.plane();
            const double db = b[s.axis] - s.plane();
            if (std::abs(da) < plane_eps || std::abs(db) < plane_eps)
                return false; // endpoint on the plane
            if ((da > 0.0) == (db > 0.0))
                return false;
            const double t = da / (da - db);
            return s.contains(a + (b - a) * t, 0.0);
        }

        struct Blockers
        {
            const std::vector<Surface> *surfaces;
            const Vec3 *body_center; // nullptr when no patient is present
            double body_radius;

            bool blocked(const Vec3 &a, const Vec3 &b, int skip_a, int skip_b, bool touches_body) const
            {
                for (std::size_t i = 0; i < surfaces->size(); ++i)
                {
                    const int id = static_cast<int>(i);
                    if (id == skip_a || id == skip_b)
                        continue;
                    if (segment_hits_surface(a, b, (*surfaces)[i]))
                        return true;
                }
                if (body_center && !touches_body && body_radius > 0.0 &&
                    segment_point_distance(a, b, *body_center) < body_radius)
                    return true;
                return false;
            }
        };

        std::optional<Leg> build_leg(const std::vector<Surface> &surfaces, const std::vector<int> &sequence,
                                     const Vec3 &start, const Vec3 &target, bool target_is_body,
                                     const Blockers &blockers, double freq)
        {
            const std::size_t k = sequence.size();
            std::vector<Vec3> images(k + 1);
            images[0] = start;
            for (std::size_t j = 0; j < k; ++j)
                images[j + 1] = mirror(images[j], surfaces[sequence[j]]);

            Leg leg;
            leg.surfaces = sequence;
            leg.points.assign(k + 2, Vec3{});
            leg.points[0] = start;
            leg.points[k + 1] = target;

            Vec3 cur = target;
            for (std::size_t j = k; j >= 1; --j)
            {
                const Surface &s = surfaces[sequence[j - 1]];
                const Vec3 &img = images[j];
                const double denom = img[s.axis] - cur[s.axis];
                if (std::abs(denom) < plane_eps)
                    return std::nullopt;
                const double t = (s.plane() - cur[s.axis]) / denom;
                if (!(t > plane_eps && t < 1.0 - plane_eps))
                    return std::nullopt;
                Vec3 p = cur + (img - cur) * t;
                p[s.axis] = s.plane();
                if (!s.contains(p))
                    return std::nullopt;
                leg.points[j] = p;
                cur = p;
            }

            // Both neighbours of a reflection point must lie strictly on the same side of its plane
            for (std::size_t j = 1; j <= k; ++j)
            {
                const Surface &s = surfaces[sequence[j - 1]];
                const double before = leg.points[j - 1][s.axis] - s.plane();
                const double after = leg.points[j + 1][s.axis] - s.plane();
                if (std::abs(before) < plane_eps || std::abs(after) < plane_eps || (before > 0.0) != (after > 0.0))
                    return std::nullopt;
            }

            for (std::size_t j = 0; j + 1 < leg.points.size(); ++j)
            {
                const int skip_a = j == 0 ? -1 : sequence[j - 1];
                const int skip_b = j + 1 <= k ? sequence[j] : -1;
                const bool touches_body = target_is_body && j + 1 == leg.points.size() - 1;
                if (blockers.blocked(leg.points[j], leg.points[j + 1], skip_a, skip_b, touches_body))
                    return std::nullopt;
            }

            for (std::size_t j = 1; j <= k; ++j)
            {
                const Surface &s = surfaces[sequence[j - 1]];
                const Vec3 incoming = normalized(leg.points[j] - leg.points[j - 1]);
                const double cos_inc = std::clamp(std::abs(incoming.dot(s.normal())), 0.0, 1.0);
                const double angle = std::acos(cos_inc);
                if (!(angle < pi / 2.0))
                    return std::nullopt;
                leg.reflection *= fresnel_reflection(s.material, angle, freq);
                leg.roughness *= roughness_attenuation(s.material, angle, freq);
            }

            leg.length = (target - images[k]).norm();
            leg.start_dir = normalized(leg.points[1] - leg.points[0]);
            leg.target_dir = normalized(leg.points[k] - leg.points[k + 1]);
            return leg;
        }

        // All surface sequences of exactly `length` without immediate repeats
        void enumerate_sequences(std::size_t n_surfaces, int length, std::vector<int> &prefix,
                                 std::vector<std::vector<int>> &out)
        {
            if (static_cast<int>(prefix.size()) == length)
            {
                out.push_back(prefix);
                return;
            }
            for (std::size_t s = 0; s < n_surfaces; ++s)
            {
                if (!prefix.empty() && prefix.back() == static_cast<int>(s))
                    continue;
                prefix.push_back(static_cast<int>(s));
                enumerate_sequences(n_surfaces, length, prefix, out);
                prefix.pop_back();
            }
        }

        double angle_between(const Vec3 &a, const Vec3 &b)
        {
            return std::acos(std::clamp(a.dot(b), -1.0, 1.0));
        }

        struct TraceResult
        {
            std::vector<Candidate> candidates;
            bool line_of_sight = false;
        };

        TraceResult trace_candidates(const Scene &scene, const TrxNode &node, const Vec3 *chest,
                                     int max_bounces, bool with_clutter)
        {
            const double freq = scene.radio.carrier_hz;
            const AntennaModel &antenna = scene.radio.antenna;
            const Vec3 boresight = unit_vector(node.beam);
            const Blockers blockers{&scene.surfaces, chest, scene.body_radius};

            std::vector<std::vector<std::vector<int>>> sequences(max_bounces + 1);
            for (int k = 0; k <= max_bounces; ++k)
            {
                std::vector<int> prefix;
                enumerate_sequences(scene.surfaces.size(), k, prefix, sequences[k]);
            }

            TraceResult result;
            if (chest)
            {
                std::vector<Leg> legs;
                for (int k = 0; k <= max_bounces; ++k)
                    for (const auto &seq : sequences[k])
                        if (auto leg = build_leg(scene.surfaces, seq, node.position, *chest, true, blockers, freq))
                        {
                            if (k == 0)
                                result.line_of_sight = true;
                            legs.push_back(std::move(*leg));
                        }

                const Vec3 &axis = scene.patient.motion_axis;
                for (const Leg &out : legs)
                    for (const Leg &back : legs)
                    {
                        const int bounces = static_cast<int>(out.surfaces.size() + back.surfaces.size());
                        if (bounces > max_bounces)
                            continue;
                        const std::complex<double> refl = out.reflection * back.reflection;
                        const double refl_mag = std::abs(refl) * out.roughness * back.roughness;
                        if (!(refl_mag > 0.0))
                            continue;
                        Candidate c;
                        c.rest_length = out.length + back.length;
                        c.sensitivity = axis.dot(out.target_dir + back.target_dir);
                        c.log_amp_no_spread = 0.5 * (antenna.log_gain(angle_between(boresight, out.start_dir)) +
                                                     antenna.log_gain(angle_between(boresight, back.start_dir))) +
                                              std::log(refl_mag);
                        c.reflection_phase = refl / std::abs(refl);
                        c.bounce_count = bounces;
                        c.segment_list = out.surfaces;
                        c.segment_list.insert(c.segment_list.end(), back.surfaces.rbegin(), back.surfaces.rend());
                        c.via_patient = true;
                        result.candidates.push_back(std::move(c));
                    }
            }

            if (with_clutter)
            {
                for (int k = 1; k <= max_bounces; ++k)
                    for (const auto &seq : sequences[k])
                    {
                        auto leg = build_leg(scene.surfaces, seq, node.position, node.position, false, blockers, freq);
                        if (!leg)
                            continue;
                        const double refl_mag = std::abs(leg->reflection) * leg->roughness;
                        if (!(refl_mag > 0.0))
                            continue;
                        Candidate c;
                        c.rest_length = leg->length;
                        c.sensitivity = 0.0;
                        c.log_amp_no_spread = 0.5 * (antenna.log_gain(angle_between(boresight, leg->start_dir)) +
                                                     antenna.log_gain(angle_between(boresight, leg->target_dir))) +
                                              std::log(refl_mag);
                        c.reflection_phase = leg->reflection / std::abs(leg->reflection);
                        c.bounce_count = k;
                        c.segment_list = seq;
                        c.via_patient = false;
                        result.candidates.push_back(std::move(c));
                    }
            }
            return result;
        }

        // Carrier phase exp(-j 2 pi f L / c0) with the integer cycles removed before scaling by 2 pi
        std::complex<double> carrier_phasor(double freq, double length)
        {
            const double cycles = freq * length / speed_of_light;
            const double frac = cycles - std::floor(cycles);
            return std::polar(1.0, -2.0 * pi * frac);
        }

        std::vector<PathComponent> finalize(const Scene &scene, const std::vector<Candidate> &candidates,
                                            double offset)
        {
            const double freq = scene.radio.carrier_hz;
            const double lambda = speed_of_light / freq;

            std::vector<double> lengths(candidates.size()), log_amps(candidates.size());
            double strongest = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < candidates.size(); ++i)
            {
                lengths[i] = candidates[i].rest_length - offset * candidates[i].sensitivity;
                log_amps[i] = std::log(lambda / (4.0 * pi * lengths[i])) + candidates[i].log_amp_no_spread;
                strongest = std::max(strongest, log_amps[i]);
            }

            const double cutoff = strongest - scene.radio.dynamic_range_db / 20.0 * std::log(10.0);
            std::vector<PathComponent> paths;
            for (std::size_t i = 0; i < candidates.size(); ++i)
            {
                if (log_amps[i] < cutoff)
                    continue;
                const double amp = std::exp(log_amps[i]);
                if (!(amp > 0.0))
                    continue;
                PathComponent p;
                p.path_length = lengths[i];
                p.delay_tau = lengths[i] / speed_of_light;
                p.complex_gain = amp * candidates[i].reflection_phase * carrier_phasor(freq, lengths[i]);
                p.bounce_count = candidates[i].bounce_count;
                p.segment_list = candidates[i].segment_list;
                p.via_patient = candidates[i].via_patient;
                paths.push_back(std::move(p));
            }
            std::stable_sort(paths.begin(), paths.end(), [](const PathComponent &a, const PathComponent &b)
                             {
                                 if (a.path_length != b.path_length)
                                     return a.path_length < b.path_length;
                                 return a.segment_list < b.segment_list; });
            return paths;
        }

        void check_request(const Scene &scene, std::size_t node_index, int max_bounces)
        {
            scene.validate();
            if (node_index >= scene.trx_nodes.size())
                fail(ErrorCode::invalid_argument, "node index " + std::to_string(node_index) + " out of range");
            if (max_bounces < 0 || max_bounces > max_supported_bounces)
                fail(ErrorCode::invalid_argument, "max_bounces must lie in [0, 3]");
        }

        void check_offset(double offset)
        {
            if (!(offset >= 0.0 && offset <= 0.03 + 1e-12))
                fail(ErrorCode::invalid_argument, "motion offset must lie in [0, 3 cm]");
        }

        ChannelImpulseResponse make_cir(const Scene &scene, std::vector<PathComponent> paths, bool los,
                                        int time_index, std::optional<double> offset)
        {
            if (paths.empty())
                fail(ErrorCode::empty_channel, "no propagation path survives the dynamic-range cutoff");
            ChannelImpulseResponse cir;
            cir.time_index = time_index;
            cir.paths = std::move(paths);
            cir.carrier_freq = scene.radio.carrier_hz;
            cir.line_of_sight = los;
            cir.motion_offset = offset;
            return cir;
        }

        ChannelImpulseResponse snapshot_exact(const Scene &scene, std::size_t node_index, double offset,
                                              int max_bounces, int time_index)
        {
            const Vec3 chest = scene.patient.chest_center + scene.patient.motion_axis * offset;
            auto traced = trace_candidates(scene, scene.trx_nodes[node_index], &chest, max_bounces,
                                           scene.radio.include_clutter);
            return make_cir(scene, finalize(scene, traced.candidates, 0.0), traced.line_of_sight, time_index, offset);
        }
    }

    PathTrace trace_paths(const Scene &scene, std::size_t node_index, int max_bounces)
    {
        check_request(scene, node_index, max_bounces);
        const Vec3 chest = scene.patient.chest_center;
        auto traced = trace_candidates(scene, scene.trx_nodes[node_index], &chest, max_bounces,
                                       scene.radio.include_clutter);
        PathTrace out;
        out.paths = finalize(scene, traced.candidates, 0.0);
        out.line_of_sight = traced.line_of_sight;
        if (out.paths.empty())
            fail(ErrorCode::empty_channel, "no propagation path survives the dynamic-range cutoff");
        return out;
    }

    ChannelImpulseResponse synthesize_cir(const Scene &scene, std::size_t node_index, double motion_offset,
                                          int max_bounces, int time_index)
    {
        check_request(scene, node_index, max_bounces);
        check_offset(motion_offset);
        if (scene.radio.motion_model == MotionModel::exact_geometry)
            return snapshot_exact(scene, node_index, motion_offset, max_bounces, time_index);

        const Vec3 chest = scene.patient.chest_center;
        auto traced = trace_candidates(scene, scene.trx_nodes[node_index], &chest, max_bounces,
                                       scene.radio.include_clutter);
        return make_cir(scene, finalize(scene, traced.candidates, motion_offset), traced.line_of_sight, time_index,
                        motion_offset);
    }

    std::vector<ChannelImpulseResponse> synthesize_trajectory(const Scene &scene, std::size_t node_index,
                                                              std::span<const double> offsets, int max_bounces)
    {
        check_request(scene, node_index, max_bounces);
        const double quarter_wave = 0.25 * scene.wavelength();
        for (std::size_t i = 0; i < offsets.size(); ++i)
        {
            check_offset(offsets[i]);
            if (i > 0 && !(std::abs(offsets[i] - offsets[i - 1]) < quarter_wave))
                fail(ErrorCode::sampling_violation, "step " + std::to_string(i) + " reaches a quarter wavelength");
        }

        std::vector<ChannelImpulseResponse> out;
        out.reserve(offsets.size());
        if (scene.radio.motion_model == MotionModel::exact_geometry)
        {
            for (std::size_t i = 0; i < offsets.size(); ++i)
                out.push_back(snapshot_exact(scene, node_index, offsets[i], max_bounces, static_cast<int>(i)));
            return out;
        }

        const Vec3 chest = scene.patient.chest_center;
        auto traced = trace_candidates(scene, scene.trx_nodes[node_index], &chest, max_bounces,
                                       scene.radio.include_clutter);
        for (std::size_t i = 0; i < offsets.size(); ++i)
            out.push_back(make_cir(scene, finalize(scene, traced.candidates, offsets[i]), traced.line_of_sight,
                                   static_cast<int>(i), offsets[i]));
        return out;
    }

    ChannelImpulseResponse baseline_cir(const Scene &scene, std::size_t node_index, int max_bounces)
    {
        check_request(scene, node_index, max_bounces);
        auto traced = trace_candidates(scene, scene.trx_nodes[node_index], nullptr, max_bounces, true);
        ChannelImpulseResponse cir;
        cir.carrier_freq = scene.radio.carrier_hz;
        cir.line_of_sight = false;
        if (!traced.candidates.empty())
            cir.paths = finalize(scene, traced.candidates, 0.0);
        return cir;
    }

    double strongest_path_power_dbm(const ChannelImpulseResponse &cir, const AntennaModel &antenna)
    {
        double best = 0.0;
        for (const auto &p : cir.paths)
            best = std::max(best, std::abs(p.complex_gain));
        if (!(best > 0.0))
            fail(ErrorCode::empty_channel, "channel has no paths");
        return antenna.tx_power_dbm + 20.0 * std::log10(best);
    }
}
