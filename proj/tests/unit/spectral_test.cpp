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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "direct_dft.hpp"
#include "novelty/spectral.hpp"
#include "novelty/windowing.hpp"
#include "test_support.hpp"

namespace novelty {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Periodogram, ConstantSignal) {
    const std::vector<double> x{2, 2, 2, 2};
    const auto p = periodogram(x, 10.0);
    ASSERT_EQ(p.values.size(), 3u);
    EXPECT_NEAR(p.values[0], 1.6, 1e-12);
    EXPECT_NEAR(p.values[1], 0.0, 1e-12);
    EXPECT_NEAR(p.values[2], 0.0, 1e-12);
}

TEST(Periodogram, QuarterCosine) {
    std::vector<double> x(4);
    for (int n = 0; n < 4; ++n) {
        x[n] = std::cos(2 * kPi * n / 4);
    }
    const auto p = periodogram(x, 4.0);
    EXPECT_NEAR(p.values[0], 0.0, 1e-12);
    EXPECT_NEAR(p.values[1], 0.5, 1e-12);
    EXPECT_NEAR(p.values[2], 0.0, 1e-12);
    double total = 0.0;
    for (double v : p.values) {
        total += v * 4.0 / 4.0;
    }
    EXPECT_NEAR(total, 0.5, 1e-12);
}

TEST(Periodogram, MatchesDirectDft) {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> nd(0.0, 3.0);
    for (std::size_t n : {2u, 3u, 5u, 16u, 31u, 64u, 100u, 257u}) {
        std::vector<double> x(n);
        for (auto& v : x) {
            v = nd(gen);
        }
        const auto got = periodogram(x, 37.5).values;
        const auto want = oracle::direct_periodogram(x, 37.5);
        ASSERT_EQ(got.size(), want.size());
        double peak = 0.0;
        for (double v : want) {
            peak = std::max(peak, v);
        }
        for (std::size_t k = 0; k < got.size(); ++k) {
            EXPECT_NEAR(got[k], want[k], 1e-10 * peak) << "n=" << n << " k=" << k;
        }
    }
}

TEST(Periodogram, Parseval64) {
    std::mt19937_64 gen(6);
    std::normal_distribution<double> nd;
    std::vector<double> x(64);
    for (auto& v : x) {
        v = nd(gen);
    }
    const auto p = periodogram(x, 100.0);
    double s = 0.0;
    for (double v : p.values) {
        s += v * 100.0 / 64.0;
    }
    const double ms = oracle::mean_square(x);
    EXPECT_NEAR(s, ms, 1e-9 * ms);
}

TEST(Periodogram, ScalingIsQuadratic) {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> nd;
    std::vector<double> x(48);
    for (auto& v : x) {
        v = nd(gen);
    }
    std::vector<double> y = x;
    for (auto& v : y) {
        v *= 3.0;
    }
    const auto px = periodogram(x, 20.0).values;
    const auto py = periodogram(y, 20.0).values;
    for (std::size_t k = 0; k < px.size(); ++k) {
        EXPECT_NEAR(py[k], 9.0 * px[k], 1e-12 * std::max(1.0, py[k]));
    }
}

TEST(Periodogram, SinusoidConcentratesInOneBin) {
    const std::size_t n = 128;
    for (std::size_t k0 : {1u, 7u, 40u, 63u}) {
        std::vector<double> x(n);
        for (std::size_t t = 0; t < n; ++t) {
            x[t] = std::sin(2 * kPi * static_cast<double>(k0 * t) / n);
        }
        const auto p = periodogram(x, 50.0).values;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (k != k0) {
                EXPECT_LT(p[k], 1e-9 * p[k0]);
            }
        }
    }
}

TEST(Periodogram, Errors) {
    const std::vector<double> one{1.0};
    EXPECT_EQ(testing::error_code_of([&] { periodogram(one, 1.0); }), ErrorCode::insufficient_data);
    const std::vector<double> bad{1.0, NAN};
    EXPECT_EQ(testing::error_code_of([&] { periodogram(bad, 1.0); }), ErrorCode::value);
    const std::vector<double> ok{1.0, 2.0};
    EXPECT_EQ(testing::error_code_of([&] { periodogram(ok, 0.0); }), ErrorCode::value);
}

TEST(BinPsd, Examples) {
    Psd a{{1, 3, 5, 7, 2, 4, 6, 8}, 1.0, 14};
    EXPECT_EQ(bin_psd(a, 4), (std::vector<double>{2, 6, 3, 7}));
    Psd b{{10, 20, 30, 40, 50}, 1.0, 8};
    EXPECT_EQ(bin_psd(b, 4), (std::vector<double>{10, 20, 30, 45}));
    Psd c{{1, 2, 3}, 1.0, 4};
    const auto binned = bin_psd(c, 4);
    ASSERT_EQ(binned.size(), 4u);
    EXPECT_NE(std::find(binned.begin(), binned.end(), 0.0), binned.end());
}

TEST(BinPsd, EveryIndexInExactlyOneBin) {
    for (std::size_t len = 1; len < 40; ++len) {
        for (std::size_t bins = 1; bins < 40; ++bins) {
            std::vector<int> owner(len, 0);
            for (std::size_t j = 0; j < bins; ++j) {
                for (std::size_t i = j * len / bins; i < (j + 1) * len / bins; ++i) {
                    ++owner[i];
                }
            }
            for (int o : owner) {
                ASSERT_EQ(o, 1);
            }
            // Sum over bins of (mean * count) recovers the total.
            Psd p{std::vector<double>(len), 1.0, 2 * len};
            for (std::size_t i = 0; i < len; ++i) {
                p.values[i] = static_cast<double>(i + 1);
            }
            const auto b = bin_psd(p, bins);
            double total = 0.0;
            for (std::size_t j = 0; j < bins; ++j) {
                total += b[j] * static_cast<double>((j + 1) * len / bins - j * len / bins);
            }
            EXPECT_NEAR(total, len * (len + 1) / 2.0, 1e-9);
        }
    }
}

Mission uniform_mission(std::size_t count, double rate) {
    Mission m;
    for (std::size_t i = 0; i < count; ++i) {
        ImuSample s;
        s.t = static_cast<double>(i) / rate;
        m.samples.push_back(s);
    }
    return m;
}

TEST(FeatureVector, ZeroChannelsGiveZeros) {
    auto m = uniform_mission(12, 10.0);
    m.frames = {0.0, 0.3, 0.6, 0.9};
    const auto w = chop(m, {3, 4});
    ASSERT_EQ(w.size(), 1u);
    const auto fv = feature_vector(w[0], 16);
    ASSERT_TRUE(fv);
    EXPECT_EQ(fv->frame_index, 3u);
    EXPECT_EQ(fv->values, std::vector<double>(160, 0.0));
}

TEST(FeatureVector, SinusoidStaysInItsBlock) {
    auto m = uniform_mission(16, 16.0);
    for (std::size_t i = 0; i < m.samples.size(); ++i) {
        m.samples[i][Channel::wx] = std::cos(2 * kPi * 3.0 * static_cast<double>(i) / 16.0);
    }
    m.frames = {0.0, 1.0 / 3, 2.0 / 3, 1.0};
    const auto w = chop(m, {3, 4});
    const auto fv = feature_vector(w.at(0), 8);
    ASSERT_TRUE(fv);
    const std::size_t block = static_cast<std::size_t>(Channel::wx);
    for (std::size_t j = 0; j < fv->values.size(); ++j) {
        if (j / 8 != block) {
            EXPECT_EQ(fv->values[j], 0.0) << j;
        }
    }
    double in_block = 0.0;
    for (std::size_t j = block * 8; j < (block + 1) * 8; ++j) {
        in_block += fv->values[j];
    }
    EXPECT_GT(in_block, 0.0);
}

TEST(FeatureVector, ComposesPeriodogramAndBinning) {
    std::mt19937_64 gen(8);
    std::normal_distribution<double> nd;
    auto m = uniform_mission(6, 5.0);
    for (auto& s : m.samples) {
        for (auto& c : s.channels) {
            c = nd(gen);
        }
    }
    m.frames = {0.0, 0.4, 0.8, 1.2};
    const auto w = chop(m, {3, 4});
    ASSERT_EQ(w.at(0).samples.size(), 6u);
    const auto fv = feature_vector(w[0], 16);
    ASSERT_TRUE(fv);
    ASSERT_EQ(fv->values.size(), 160u);
    const double fs = 5.0 / 1.0; // 5 intervals over 1.0 s
    for (std::size_t c = 0; c < kChannelCount; ++c) {
        std::vector<double> x;
        for (const auto& s : w[0].samples) {
            x.push_back(s.channels[c]);
        }
        const auto direct = oracle::direct_periodogram(x, fs);
        Psd p{direct, fs, x.size()};
        const auto want = bin_psd(p, 16);
        for (std::size_t j = 0; j < 16; ++j) {
            EXPECT_NEAR(fv->values[c * 16 + j], want[j], 1e-12 * std::max(1.0, want[j]));
        }
    }
    const auto again = feature_vector(w[0], 16);
    EXPECT_EQ(again->values, fv->values);
}

TEST(FeatureVector, InsufficientWindowHasNoFeatures) {
    auto m = uniform_mission(2, 10.0);
    m.frames = {0.0, 0.1, 0.2, 0.3};
    const auto w = chop(m, {3, 4});
    ASSERT_EQ(w.size(), 1u);
    EXPECT_FALSE(feature_vector(w[0], 16).has_value());
}

} // namespace
} // namespace novelty
