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

#include "novelty/normalize.hpp"

#include <cmath>

#include "novelty/error.hpp"

namespace novelty {

NormStats NormStats::identity(std::size_t dim) {
    return NormStats{std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0), 0};
}

NormStats fit_norm(const Matrix& x) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (n < 2) {
        throw Error(ErrorCode::insufficient_data, "normalization needs at least 2 rows");
    }
    for (double v : x.data()) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::value, "feature matrix contains a non-finite value");
        }
    }

    NormStats stats;
    stats.n_fit = n;
    stats.mean.assign(d, 0.0);
    stats.stddev.assign(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = x.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            stats.mean[j] += r[j];
        }
    }
    for (double& m : stats.mean) {
        m /= static_cast<double>(n);
    }
    // One refinement step: add the mean residual to absorb summation error.
    std::vector<double> residual(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = x.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            residual[j] += r[j] - stats.mean[j];
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        stats.mean[j] += residual[j] / static_cast<double>(n);
    }
    // A running sum of n copies of c need not divide back to c exactly; pin
    // constant columns so they standardize to exactly 0.
    for (std::size_t j = 0; j < d; ++j) {
        const double first = x(0, j);
        bool constant = true;
        for (std::size_t i = 1; i < n && constant; ++i) {
            constant = x(i, j) == first;
        }
        if (constant) {
            stats.mean[j] = first;
        }
    }
    // Second pass on centered values; exact zero for constant columns.
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = x.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double c = r[j] - stats.mean[j];
            stats.stddev[j] += c * c;
        }
    }
    for (double& s : stats.stddev) {
        s = std::sqrt(s / static_cast<double>(n));
    }
    return stats;
}

std::vector<double> apply_norm(const NormStats& stats, std::span<const double> x) {
    if (x.size() != stats.dim()) {
        throw Error(ErrorCode::shape, "feature vector has dimension " + std::to_string(x.size()) +
                                          ", normalization expects " + std::to_string(stats.dim()));
    }
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double s = stats.stddev[j] >= kMinStddev ? stats.stddev[j] : 1.0;
        out[j] = (x[j] - stats.mean[j]) / s;
    }
    return out;
}

Matrix apply_norm(const NormStats& stats, const Matrix& x) {
    Matrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto row = apply_norm(stats, x.row(i));
        std::copy(row.begin(), row.end(), out.row(i).begin());
    }
    return out;
}

} // namespace novelty
