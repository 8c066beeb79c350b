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

#include "novelty/model_io.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <optional>
#include <algorithm>

#include "novelty/error.hpp"

namespace novelty {
namespace {

constexpr std::size_t kHeaderBytes = 56;

class Writer {
public:
    void bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const std::uint8_t*>(p);
        buf_.insert(buf_.end(), b, b + n);
    }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) {
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
    void f64s(std::span<const double> vs) {
        for (double v : vs) {
            f64(v);
        }
    }
    std::vector<std::uint8_t>& data() { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> b) : buf_(b) {}

    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(buf_[pos_++]) << (8 * i);
        }
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) {
            v |= static_cast<std::uint64_t>(buf_[pos_++]) << (8 * i);
        }
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::vector<double> f64s(std::size_t n) {
        std::vector<double> out(n);
        for (auto& v : out) {
            v = f64();
        }
        return out;
    }
    void skip(std::size_t n) { pos_ += n; }

private:
    std::span<const std::uint8_t> buf_;
    std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large payloads in slices.
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        const auto len = static_cast<uInt>(std::min<std::size_t>(bytes.size() - pos, 1u << 30));
        crc = crc32(crc, bytes.data() + pos, len);
        pos += len;
    }
    return static_cast<std::uint32_t>(crc);
}

// Expected total file length, or nullopt if the header's counts overflow.
std::optional<std::uint64_t> expected_length(std::uint64_t n, std::uint64_t d) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max() / 16;
    if (n > kMax || d > kMax || (d != 0 && n > kMax / d)) {
        return std::nullopt;
    }
    return kHeaderBytes + 16 * d + 8 * n * d + 16 * n + 4;
}

} // namespace

std::vector<std::uint8_t> serialize(const LofModel& model) {
    Writer w;
    w.bytes(kModelMagic.data(), kModelMagic.size());
    w.u32(kModelFormatVersion);
    w.u64(model.k());
    w.f64(model.offset());
    w.u64(model.dim());
    w.u64(model.meta().bins);
    w.u64(model.meta().span);
    w.u64(model.size());
    w.f64s(model.norm_stats().mean);
    w.f64s(model.norm_stats().stddev);
    w.f64s(model.train().data());
    w.f64s(model.k_distances());
    w.f64s(model.lrd());
    const std::uint32_t crc = crc32_of(w.data());
    w.u32(crc);
    return std::move(w.data());
}

LofModel deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8) {
        throw Error(ErrorCode::truncated, "model file is " + std::to_string(bytes.size()) + " bytes");
    }
    if (std::memcmp(bytes.data(), kModelMagic.data(), kModelMagic.size()) != 0) {
        throw Error(ErrorCode::format, "bad magic bytes, not a model file");
    }
    Reader r(bytes);
    r.skip(4);
    const std::uint32_t version = r.u32();
    if (version != kModelFormatVersion) {
        throw Error(ErrorCode::version, "model format version " + std::to_string(version) +
                                            " is not supported (supported: " +
                                            std::to_string(kModelFormatVersion) + ")");
    }
    if (bytes.size() < kHeaderBytes) {
        throw Error(ErrorCode::truncated, "model header is incomplete");
    }

    LofParams params;
    FeatureMeta meta;
    params.k = r.u64();
    params.offset = r.f64();
    const std::uint64_t d = r.u64();
    meta.bins = r.u64();
    meta.span = r.u64();
    const std::uint64_t n = r.u64();

    const auto expected = expected_length(n, d);
    if (!expected || bytes.size() < *expected) {
        throw Error(ErrorCode::truncated, "model file shorter than its header declares");
    }
    if (bytes.size() > *expected) {
        throw Error(ErrorCode::format, "trailing bytes after model payload");
    }
    const auto payload = bytes.first(bytes.size() - 4);
    Reader tail(bytes.subspan(bytes.size() - 4));
    if (crc32_of(payload) != tail.u32()) {
        throw Error(ErrorCode::checksum, "model file CRC-32 mismatch");
    }

    NormStats stats;
    stats.mean = r.f64s(d);
    stats.stddev = r.f64s(d);
    stats.n_fit = n;
    Matrix train(n, d, r.f64s(n * d));
    auto kdist = r.f64s(n);
    auto lrd = r.f64s(n);
    return LofModel::from_parts(params, meta, std::move(stats), std::move(train), std::move(kdist),
                                std::move(lrd));
}

void save(const LofModel& model, const std::filesystem::path& path) {
    const auto bytes = serialize(model);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::io, "cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error(ErrorCode::io, "write failed for " + path.string());
    }
}

LofModel load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::io, "cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return deserialize(bytes);
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.detail());
    }
}

} // namespace novelty
