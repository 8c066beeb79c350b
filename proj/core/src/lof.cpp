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

#include "novelty/lof.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "novelty/error.hpp"
#include "parallel.hpp"

namespace novelty {
namespace {

// Reachability density of a point given its neighborhood; reach-dist to o is
// max(k-distance(o), d(p, o)).
double local_reachability_density(const Neighborhood& nb, const std::vector<double>& kdist) {
    double sum = 0.0;
    for (std::size_t m = 0; m < nb.indices.size(); ++m) {
        sum += std::max(kdist[nb.indices[m]], nb.distances[m]);
    }
    if (sum < kDuplicateReachSum) {
        return kDuplicateLrd;
    }
    return static_cast<double>(nb.indices.size()) / sum;
}

void check_params(const LofParams& params) {
    if (params.k < 1) {
        throw Error(ErrorCode::config, "k must be >= 1");
    }
    if (!std::isfinite(params.offset)) {
        throw Error(ErrorCode::config, "offset must be finite");
    }
}

} // namespace

double euclidean(std::span<const double> a, std::span<const double> b) noexcept {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

Neighborhood knn_query(const Matrix& reference, std::span<const double> q, std::size_t k,
                       std::optional<std::size_t> exclude) {
    if (q.size() != reference.cols()) {
        throw Error(ErrorCode::shape, "query has dimension " + std::to_string(q.size()) +
                                          ", reference has " + std::to_string(reference.cols()));
    }
    const std::size_t n = reference.rows();
    const std::size_t candidates = exclude && *exclude < n ? n - 1 : n;
    if (k < 1 || candidates < k) {
        throw Error(ErrorCode::insufficient_data, "need at least k=" + std::to_string(k) +
                                                      " reference points, have " + std::to_string(candidates));
    }

    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        dist[i] = euclidean(reference.row(i), q);
    }

    // k-th smallest distance among candidates via partial selection.
    std::vector<double> pool;
    pool.reserve(candidates);
    for (std::size_t i = 0; i < n; ++i) {
        if (!exclude || i != *exclude) {
            pool.push_back(dist[i]);
        }
    }
    std::nth_element(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k - 1), pool.end());
    const double kth = pool[k - 1];

    std::vector<std::size_t> members;
    members.reserve(k + 4);
    for (std::size_t i = 0; i < n; ++i) {
        if ((!exclude || i != *exclude) && dist[i] <= kth) {
            members.push_back(i);
        }
    }
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
        return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
    });

    Neighborhood nb;
    nb.k_distance = kth;
    nb.indices = std::move(members);
    nb.distances.reserve(nb.indices.size());
    for (auto i : nb.indices) {
        nb.distances.push_back(dist[i]);
    }
    return nb;
}

std::string_view to_string(ScoreStatus status) noexcept {
    switch (status) {
    case ScoreStatus::scored: return "scored";
    case ScoreStatus::insufficient: return "insufficient";
    case ScoreStatus::warmup: return "warmup";
    }
    return "unknown";
}

LofModel LofModel::fit(const Matrix& raw, const LofParams& params, const FeatureMeta& meta) {
    check_params(params);
    if (raw.rows() <= params.k) {
        throw Error(ErrorCode::insufficient_data, "LOF fit needs more than k=" + std::to_string(params.k) +
                                                      " training rows, have " + std::to_string(raw.rows()));
    }
    return fit_with_stats(raw, fit_norm(raw), params, meta);
}

LofModel LofModel::fit_with_stats(const Matrix& raw, NormStats stats, const LofParams& params,
                                  const FeatureMeta& meta) {
    check_params(params);
    if (raw.rows() <= params.k) {
        throw Error(ErrorCode::insufficient_data, "LOF fit needs more than k=" + std::to_string(params.k) +
                                                      " training rows, have " + std::to_string(raw.rows()));
    }
    if (stats.dim() != raw.cols()) {
        throw Error(ErrorCode::shape, "normalization statistics do not match feature dimension");
    }
    for (double v : raw.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::value, "training matrix contains a non-finite value");
        }
    }

    LofModel model;
    model.params_ = params;
    model.meta_ = meta;
    model.train_ = apply_norm(stats, raw);
    model.stats_ = std::move(stats);
    model.compute_densities();
    return model;
}

void LofModel::compute_densities() {
    const std::size_t n = train_.rows();
    std::vector<Neighborhood> hoods(n);
    kdist_.assign(n, 0.0);
    detail::parallel_for(n, [&](std::size_t i) {
        hoods[i] = knn_query(train_, train_.row(i), params_.k, i);
        kdist_[i] = hoods[i].k_distance;
    });
    lrd_.assign(n, 0.0);
    detail::parallel_for(n, [&](std::size_t i) { lrd_[i] = local_reachability_density(hoods[i], kdist_); });
}

LofModel LofModel::from_parts(LofParams params, FeatureMeta meta, NormStats stats, Matrix train,
                              std::vector<double> k_distances, std::vector<double> lrd) {
    check_params(params);
    const std::size_t n = train.rows();
    if (n <= params.k) {
        throw Error(ErrorCode::insufficient_data, "model holds " + std::to_string(n) +
                                                      " training rows, needs more than k=" +
                                                      std::to_string(params.k));
    }
    if (stats.dim() != train.cols() || stats.stddev.size() != stats.mean.size() || k_distances.size() != n ||
        lrd.size() != n) {
        throw Error(ErrorCode::shape, "inconsistent model parts");
    }
    LofModel model;
    model.params_ = params;
    model.meta_ = meta;
    model.stats_ = std::move(stats);
    model.train_ = std::move(train);
    model.kdist_ = std::move(k_distances);
    model.lrd_ = std::move(lrd);
    return model;
}

double LofModel::lof_normalized(std::span<const double> q) const {
    const Neighborhood nb = knn_query(train_, q, params_.k);
    const double lrd_q = local_reachability_density(nb, kdist_);
    double lrd_sum = 0.0;
    for (auto i : nb.indices) {
        lrd_sum += lrd_[i];
    }
    return lrd_sum / (static_cast<double>(nb.indices.size()) * lrd_q);
}

double LofModel::lof(std::span<const double> raw) const {
    const auto q = apply_norm(stats_, raw);
    return lof_normalized(q);
}

NoveltyScore LofModel::score(std::span<const double> raw, double threshold, std::size_t frame_index) const {
    NoveltyScore s;
    s.frame_index = frame_index;
    s.lof = lof(raw);
    s.abnormality = params_.offset - s.lof;
    s.flagged = is_flagged(s.abnormality, threshold);
    s.status = ScoreStatus::scored;
    return s;
}

} // namespace novelty
