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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "novelty/matrix.hpp"
#include "novelty/normalize.hpp"

namespace novelty {

/// Reachability sums below this engage the duplicate guard.
inline constexpr double kDuplicateReachSum = 1e-12;
/// Finite stand-in for the infinite density of exactly coincident points.
inline constexpr double kDuplicateLrd = 1e12;

inline constexpr std::size_t kDefaultNeighbors = 15;
inline constexpr double kDefaultOffset = 1.5;
inline constexpr double kDefaultThreshold = 0.4;

struct LofParams {
    std::size_t k = kDefaultNeighbors;
    /// abnormality = offset - LOF
    double offset = kDefaultOffset;
};

/// Feature-extraction settings the model was trained with, carried in the
/// model file so scoring can reproduce them.
struct FeatureMeta {
    std::size_t bins = 16;
    std::size_t span = 3;

    friend bool operator==(const FeatureMeta&, const FeatureMeta&) = default;
};

/// The k-distance neighborhood of a point: every reference point no farther
/// than the k-th nearest one. Holds more than k entries when distances tie
/// at the boundary. Sorted by (distance, index).
struct Neighborhood {
    std::vector<std::size_t> indices;
    std::vector<double> distances;
    double k_distance = 0.0;
};

double euclidean(std::span<const double> a, std::span<const double> b) noexcept;

/// Exhaustive k-distance neighborhood of q within `reference`. `exclude`
/// removes one reference row from consideration (self-exclusion at fit time).
Neighborhood knn_query(const Matrix& reference, std::span<const double> q, std::size_t k,
                       std::optional<std::size_t> exclude = std::nullopt);

enum class ScoreStatus { scored, insufficient, warmup };

std::string_view to_string(ScoreStatus status) noexcept;

struct NoveltyScore {
    std::size_t frame_index = 0;
    double t = 0.0;
    double lof = 0.0;
    double abnormality = 0.0;
    bool flagged = false;
    ScoreStatus status = ScoreStatus::scored;
};

/// Strict comparison: an abnormality equal to the threshold is not flagged.
inline bool is_flagged(double abnormality, double threshold) noexcept { return abnormality < threshold; }

/// Local Outlier Factor model in novelty mode: it memorizes normalized
/// training rows together with their k-distances and local reachability
/// densities, and never changes after fit. Queries are scored against the
/// training set only.
class LofModel {
public:
    /// Learns standardization from `raw`, then fits LOF on the standardized rows.
    static LofModel fit(const Matrix& raw, const LofParams& params = {}, const FeatureMeta& meta = {});

    /// Fits with caller-supplied statistics. NormStats::identity(d) feeds
    /// rows through unchanged.
    static LofModel fit_with_stats(const Matrix& raw, NormStats stats, const LofParams& params = {},
                                   const FeatureMeta& meta = {});

    /// Reassembles a model from stored parts (used by the model file reader).
    /// Validates shapes and parameter ranges but does not recompute anything.
    static LofModel from_parts(LofParams params, FeatureMeta meta, NormStats stats, Matrix train,
                               std::vector<double> k_distances, std::vector<double> lrd);

    std::size_t k() const noexcept { return params_.k; }
    double offset() const noexcept { return params_.offset; }
    const LofParams& params() const noexcept { return params_; }
    const FeatureMeta& meta() const noexcept { return meta_; }
    std::size_t dim() const noexcept { return train_.cols(); }
    std::size_t size() const noexcept { return train_.rows(); }

    const Matrix& train() const noexcept { return train_; }
    const NormStats& norm_stats() const noexcept { return stats_; }
    const std::vector<double>& k_distances() const noexcept { return kdist_; }
    const std::vector<double>& lrd() const noexcept { return lrd_; }

    /// LOF of a raw (unnormalized) feature vector.
    double lof(std::span<const double> raw) const;
    /// LOF of a vector already in the model's normalized space.
    double lof_normalized(std::span<const double> q) const;

    /// abnormality = offset - LOF, flagged when below `threshold`.
    NoveltyScore score(std::span<const double> raw, double threshold = kDefaultThreshold,
                       std::size_t frame_index = 0) const;

private:
    LofModel() = default;
    void compute_densities();

    LofParams params_;
    FeatureMeta meta_;
    NormStats stats_;
    Matrix train_;
    std::vector<double> kdist_;
    std::vector<double> lrd_;
};

} // namespace novelty
