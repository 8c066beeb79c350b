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

#include <cstddef>
#include <span>
#include <vector>

#include "novelty/matrix.hpp"

namespace novelty {

/// Standard deviations below this are treated as zero and replaced by a
/// divisor of 1, so constant features map to 0.
inline constexpr double kMinStddev = 1e-12;

/// Per-feature standardization learned from training rows.
struct NormStats {
    std::vector<double> mean;
    std::vector<double> stddev; ///< population (divisor n)
    std::size_t n_fit = 0;

    std::size_t dim() const noexcept { return mean.size(); }

    /// mean 0 / stddev 1 in every dimension: apply_norm becomes the identity.
    static NormStats identity(std::size_t dim);

    friend bool operator==(const NormStats&, const NormStats&) = default;
};

NormStats fit_norm(const Matrix& x);

std::vector<double> apply_norm(const NormStats& stats, std::span<const double> x);
Matrix apply_norm(const NormStats& stats, const Matrix& x);

} // namespace novelty
