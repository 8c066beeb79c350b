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

#include "novelty/error.hpp"

namespace novelty {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::format: return "format error";
    case ErrorCode::ordering: return "ordering error";
    case ErrorCode::value: return "value error";
    case ErrorCode::coverage: return "coverage error";
    case ErrorCode::insufficient_data: return "insufficient data";
    case ErrorCode::shape: return "shape error";
    case ErrorCode::config: return "config error";
    case ErrorCode::io: return "io error";
    case ErrorCode::version: return "version error";
    case ErrorCode::truncated: return "truncated file";
    case ErrorCode::checksum: return "checksum error";
    }
    return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

} // namespace novelty
