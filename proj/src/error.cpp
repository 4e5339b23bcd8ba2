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

#include "error.hpp"

namespace thzvitals
{
    const char *error_code_name(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::invalid_argument:
            return "InvalidArgument";
        case ErrorCode::zero_vector:
            return "ZeroVector";
        case ErrorCode::unsupported_polarization:
            return "UnsupportedPolarization";
        case ErrorCode::empty_channel:
            return "EmptyChannel";
        case ErrorCode::index_mismatch:
            return "IndexMismatch";
        case ErrorCode::sampling_violation:
            return "SamplingViolation";
        case ErrorCode::too_few_nodes:
            return "TooFewNodes";
        case ErrorCode::degenerate_geometry:
            return "DegenerateGeometry";
        case ErrorCode::insufficient_data:
            return "InsufficientData";
        case ErrorCode::parse_error:
            return "ParseError";
        case ErrorCode::io_error:
            return "IoError";
        }
        return "UnknownError";
    }
}
