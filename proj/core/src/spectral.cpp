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

#include "novelty/spectral.hpp"

#include <cmath>
#include <ostream>

#include "fft.hpp"
#include "novelty/error.hpp"

namespace novelty {

Psd periodogram(std::span<const double> x, double fs) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw Error(ErrorCode::insufficient_data, "periodogram needs at least 2 samples");
    }
    if (!(fs > 0.0) || !std::isfinite(fs)) {
        throw Error(ErrorCode::value, "sampling rate must be positive and finite");
    }
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::value, "periodogram input contains a non-finite value");
        }
    }

    Psd psd;
    psd.fs = fs;
    psd.n = n;
    psd.values = detail::half_spectrum_power(x);
    const double scale = 1.0 / (fs * static_cast<double>(n));
    const std::size_t last = psd.values.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) {
        const bool unpaired = k == 0 || (n % 2 == 0 && k == last);
        psd.values[k] *= unpaired ? scale : 2.0 * scale;
    }
    return psd;
}

std::vector<double> bin_psd(const Psd& psd, std::size_t bins) {
    if (bins < 1) {
        throw Error(ErrorCode::config, "bin count must be >= 1");
    }
    const std::size_t len = psd.values.size();
    std::vector<double> out(bins, 0.0);
    for (std::size_t j = 0; j < bins; ++j) {
        const std::size_t lo = j * len / bins;
        const std::size_t hi = (j + 1) * len / bins;
        if (hi > lo) {
            double sum = 0.0;
            for (std::size_t i = lo; i < hi; ++i) {
                sum += psd.values[i];
            }
            out[j] = sum / static_cast<double>(hi - lo);
        }
    }
    return out;
}

std::optional<FeatureVector> feature_vector(const Window& window, std::size_t bins) {
    if (window.status != WindowStatus::ok || window.samples.size() < 2) {
        return std::nullopt;
    }
    FeatureVector fv;
    fv.frame_index = window.frame_index;
    fv.values.reserve(feature_dim(bins));
    std::vector<double> channel(window.samples.size());
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        for (std::size_t i = 0; i < window.samples.size(); ++i) {
            channel[i] = window.samples[i].channels[c];
        }
        const auto binned = bin_psd(periodogram(channel, window.mean_rate), bins);
        fv.values.insert(fv.values.end(), binned.begin(), binned.end());
    }
    return fv;
}

void write_feature_csv(std::ostream& out, std::span<const FeatureVector> features) {
    const std::size_t d = features.empty() ? 0 : features.front().values.size();
    out << "frame_index";
    for (std::size_t j = 0; j < d; ++j) {
        out << ",f" << j;
    }
    out << '\n';
    for (const auto& fv : features) {
        out << fv.frame_index;
        for (double v : fv.values) {
            out << ',' << format_double(v);
        }
        out << '\n';
    }
}

} // namespace novelty
