// Copyright 2026 The novelty Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace novelty {

enum class ErrorCode {
    format,            // malformed file or header
    ordering,          // timestamps not strictly increasing
    value,             // non-finite numeric field
    coverage,          // frame clock and samples do not overlap
    insufficient_data, // too few samples, frames, windows or training points
    shape,             // dimension mismatch
    config,            // invalid parameter or scenario configuration
    io,                // file could not be opened, read or written
    version,           // model file format version not supported
    truncated,         // model file shorter than its header declares
    checksum,          // model file CRC32 mismatch
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI's exit-code mapping) can dispatch without parsing
/// messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }
    /// Message without the leading error-kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

} // namespace novelty
