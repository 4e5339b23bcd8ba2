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
#include "csv.hpp"
#include "error.hpp"

#include <istream>
#include <map>
#include <ostream>

namespace thzvitals
{
    void write_cir_csv(std::ostream &os, std::span<const ChannelImpulseResponse> cirs)
    {
        os << csv::version_line << '\n';
        if (!cirs.empty())
            os << "# carrier_hz=" << csv::format_real(cirs.front().carrier_freq) << '\n';
        os << "time_index,delay_s,gain_re,gain_im,path_length_m,bounce_count\n";
        for (const auto &cir : cirs)
            for (const auto &p : cir.paths)
                os << cir.time_index << ',' << csv::format_real(p.delay_tau) << ','
                   << csv::format_real(p.complex_gain.real()) << ',' << csv::format_real(p.complex_gain.imag()) << ','
                   << csv::format_real(p.path_length) << ',' << p.bounce_count << '\n';
    }

    std::vector<ChannelImpulseResponse> read_cir_csv(std::istream &is, std::optional<double> carrier_hz)
    {
        const csv::Table table = csv::read_table(is);

        if (!carrier_hz)
            for (const auto &c : table.comments)
                if (c.rfind("carrier_hz=", 0) == 0)
                    carrier_hz = csv::parse_real(c.substr(11), "carrier_hz");
        if (!carrier_hz || !(*carrier_hz > 0.0))
            fail(ErrorCode::parse_error, "CIR file does not state a carrier frequency");

        const std::size_t c_t = table.column("time_index"), c_d = table.column("delay_s"),
                          c_re = table.column("gain_re"), c_im = table.column("gain_im"),
                          c_l = table.column("path_length_m"), c_b = table.column("bounce_count");

        std::map<long long, ChannelImpulseResponse> by_index;
        for (const auto &row : table.rows)
        {
            const long long t = csv::parse_integer(row[c_t], "time_index");
            auto &cir = by_index[t];
            if (cir.paths.empty())
                cir.line_of_sight = false;
            cir.time_index = static_cast<int>(t);
            cir.carrier_freq = *carrier_hz;
            PathComponent p;
            p.delay_tau = csv::parse_real(row[c_d], "delay_s");
            p.complex_gain = {csv::parse_real(row[c_re], "gain_re"), csv::parse_real(row[c_im], "gain_im")};
            p.path_length = csv::parse_real(row[c_l], "path_length_m");
            p.bounce_count = static_cast<int>(csv::parse_integer(row[c_b], "bounce_count"));
            cir.line_of_sight = cir.line_of_sight || p.bounce_count == 0;
            cir.paths.push_back(std::move(p));
        }

        std::vector<ChannelImpulseResponse> out;
        out.reserve(by_index.size());
        for (auto &[t, cir] : by_index)
            out.push_back(std::move(cir));
        return out;
    }
}
