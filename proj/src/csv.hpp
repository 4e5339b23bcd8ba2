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

#ifndef THZVITALS_CSV_HPP
#define THZVITALS_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace thzvitals::csv
{
    inline constexpr const char *version_line = "# thz-vitals-sim v1";

    // Shortest round-trip text for a double (17 significant digits)
    std::string format_real(double value);

    std::vector<std::string> split(std::string_view line, char sep = ',');
    std::string_view trim(std::string_view s);

    double parse_real(std::string_view text, std::string_view what);
    long long parse_integer(std::string_view text, std::string_view what);

    // Comma-separated table with '#' comment lines and a header row
    struct Table
    {
        std::vector<std::string> comments; // without the leading '#', trimmed
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        std::size_t column(std::string_view name) const; // throws ParseError if absent
    };

    Table read_table(std::istream &is);
}

#endif
