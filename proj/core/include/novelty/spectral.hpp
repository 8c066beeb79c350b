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
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "novelty/windowing.hpp"

namespace novelty {

/// One-sided power spectral density, units^2/Hz. Bin k sits at k*fs/N Hz.
struct Psd {
    std::vector<double> values;
    double fs = 0.0;
    std::size_t n = 0; ///< length of the input signal
};

/// Plain periodogram: rectangular taper, no detrending, density scaling
/// |X[k]|^2 / (fs*N), with every bin except DC and (even N) Nyquist doubled.
/// Satisfies sum(values) * fs / N == mean(x^2).
Psd periodogram(std::span<const double> x, double fs);

/// Averages psd.values into `bins` bins over one-sided index space. Bin j
/// covers indices [floor(j*L/B), floor((j+1)*L/B)); empty bins are 0.
std::vector<double> bin_psd(const Psd& psd, std::size_t bins);

struct FeatureVector {
    std::size_t frame_index = 0;
    std::vector<double> values; ///< channel-major, channel c at [c*B, (c+1)*B)
};

inline constexpr std::size_t feature_dim(std::size_t bins) noexcept { return kChannelCount * bins; }

/// Periodogram of each channel at the window's mean sampling rate, binned
/// and concatenated. Returns nullopt for insufficient windows.
std::optional<FeatureVector> feature_vector(const Window& window, std::size_t bins);

/// Debug dump: `frame_index,f0,...,f{d-1}`.
void write_feature_csv(std::ostream& out, std::span<const FeatureVector> features);

} // namespace novelty
