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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "novelty/lof.hpp"

namespace novelty {

inline constexpr std::array<char, 4> kModelMagic = {'N', 'O', 'V', 'M'};
inline constexpr std::uint32_t kModelFormatVersion = 1;

// Model file layout, all integers and floats little-endian:
//
//   offset  size   field
//   0       4      magic "NOVM"
//   4       4      format version (u32) = 1
//   8       8      k (u64)
//   16      8      offset (f64)
//   24      8      d, feature dimension (u64)
//   32      8      B, bins per channel (u64)
//   40      8      span, window span in frames (u64)
//   48      8      n, training rows (u64)
//   56      8*d    normalization means (f64)
//           8*d    normalization standard deviations (f64)
//           8*n*d  normalized training matrix, row-major (f64)
//           8*n    k-distances (f64)
//           8*n    local reachability densities (f64)
//           4      CRC-32 (zlib polynomial) of every preceding byte (u32)
//
// Readers check, in order: length >= 8 (truncated), magic (format),
// version (version), declared length (truncated / format for trailing
// bytes), CRC (checksum).

std::vector<std::uint8_t> serialize(const LofModel& model);
LofModel deserialize(std::span<const std::uint8_t> bytes);

void save(const LofModel& model, const std::filesystem::path& path);
LofModel load(const std::filesystem::path& path);

} // namespace novelty
