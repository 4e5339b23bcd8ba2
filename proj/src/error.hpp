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

#ifndef THZVITALS_ERROR_HPP
#define THZVITALS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace thzvitals
{
    enum class ErrorCode
    {
        invalid_argument = 1,
        zero_vector,
        unsupported_polarization,
        empty_channel,
        index_mismatch,
        sampling_violation,
        too_few_nodes,
        degenerate_geometry,
        insufficient_data,
        parse_error,
        io_error
    };

    const char *error_code_name(ErrorCode code);

    // All library failures are reported through this type; the C API maps code() to a status value.
    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &message)
            : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    [[noreturn]] inline void fail(ErrorCode code, const std::string &message)
    {
        throw Error(code, message);
    }
}

#endif
