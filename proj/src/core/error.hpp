// SPDX-License-Identifier: Apache-2.0
//
// hydrolink: underwater acoustic link, channel estimation and sea-clutter detection simulator
// Copyright (C) 2026 hydrolink contributors
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

#ifndef HYDROLINK_CORE_ERROR_HPP
#define HYDROLINK_CORE_ERROR_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace hydrolink {

/// Error categories. The numeric values are shared with the C API status codes.
enum class ErrorCode : int {
    domain = 1,       // argument outside the mathematical domain of an operation
    config = 2,       // invalid configuration (grid, stop criteria, sizes)
    dimension = 3,    // mismatched vector / matrix sizes
    calibration = 4,  // not enough samples to calibrate a detector
    io = 5,           // file read / write / format failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};
struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(ErrorCode::dimension, what) {}
};
struct CalibrationError : Error {
    explicit CalibrationError(const std::string& what) : Error(ErrorCode::calibration, what) {}
};
struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

namespace detail {

inline void require_finite(double value, const char* name)
{
    if (!std::isfinite(value))
        throw DomainError(std::string(name) + " must be finite");
}

inline void require_positive(double value, const char* name)
{
    if (!std::isfinite(value) || value <= 0.0)
        throw DomainError(std::string(name) + " must be a positive finite number, got " + std::to_string(value));
}

} // namespace detail
} // namespace hydrolink

#endif
