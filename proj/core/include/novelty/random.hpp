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

#include <cstdint>
#include <random>

namespace novelty {

/// Portable seeded generator. The engine is std::mt19937_64, whose output
/// sequence the standard fixes; the uniform and normal transforms are
/// implemented here (53-bit mantissa, Box-Muller) because the standard
/// distributions are implementation-defined. Streams are therefore identical
/// on every conforming platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in (0, 1].
    double uniform_open_low() { return 1.0 - uniform(); }
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer; decorrelates derived seeds such as base + index.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) noexcept;

} // namespace novelty
