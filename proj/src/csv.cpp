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

#include <charconv>
#include <cstdio>
#include <istream>

namespace thzvitals::csv
{
    std::string format_real(double value)
    {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        return buf;
    }

    std::vector<std::string> split(std::string_view line, char sep)
    {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true)
        {
            const std::size_t pos = line.find(sep, start);
            out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
            if (pos == std::string_view::npos)
                break;
            start = pos + 1;
        }
        return out;
    }

    std::string_view trim(std::string_view s)
    {
        const char *ws = " \t\r\n";
        const std::size_t b = s.find_first_not_of(ws);
        if (b == std::string_view::npos)
            return {};
        const std::size_t e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    }

    double parse_real(std::string_view text, std::string_view what)
    {
        const std::string s(trim(text));
        if (s.empty())
            fail(ErrorCode::parse_error, "empty value for " + std::string(what));
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(s, &used);
        }
        catch (const std::exception &)
        {
            fail(ErrorCode::parse_error, "invalid number '" + s + "' for " + std::string(what));
        }
        if (used != s.size())
            fail(ErrorCode::parse_error, "invalid number '" + s + "' for " + std::string(what));
        return v;
    }

    long long parse_integer(std::string_view text, std::string_view what)
    {
        const std::string_view s = trim(text);
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
            fail(ErrorCode::parse_error, "invalid integer '" + std::string(s) + "' for " + std::string(what));
        return v;
    }

    std::size_t Table::column(std::string_view name) const
    {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name)
                return i;
        fail(ErrorCode::parse_error, "missing CSV column '" + std::string(name) + "'");
    }

    Table read_table(std::istream &is)
    {
        Table t;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(is, line))
        {
            ++line_no;
            const std::string_view v = trim(line);
            if (v.empty())
                continue;
            if (v.front() == '#')
            {
                t.comments.emplace_back(trim(v.substr(1)));
                continue;
            }
            auto fields = split(v);
            if (t.header.empty())
            {
                t.header = std::move(fields);
                continue;
            }
            if (fields.size() != t.header.size())
                fail(ErrorCode::parse_error, "line " + std::to_string(line_no) + ": expected " +
                                                 std::to_string(t.header.size()) + " fields");
            t.rows.push_back(std::move(fields));
        }
        if (t.header.empty())
            fail(ErrorCode::parse_error, "CSV input has no header row");
        return t;
    }
}
