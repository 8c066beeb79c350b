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

#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

namespace novelty::detail {
namespace {

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const noexcept { fftw_destroy_plan(p); }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

// FFTW's planner is not thread-safe but fftw_execute_dft_r2c on an existing
// plan is, so plans are created once per length under a lock and reused.
class PlanCache {
public:
    fftw_plan get(int n) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) {
            return it->second.get();
        }
        std::vector<double> in(static_cast<std::size_t>(n));
        std::vector<fftw_complex> out(static_cast<std::size_t>(n / 2 + 1));
        fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), out.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(n, PlanPtr(plan));
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<int, PlanPtr> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

} // namespace

std::vector<double> half_spectrum_power(std::span<const double> x) {
    const int n = static_cast<int>(x.size());
    const auto bins = static_cast<std::size_t>(n / 2 + 1);
    std::vector<double> power(bins, 0.0);
    if (n == 0) {
        return power;
    }
    std::vector<double> in(x.begin(), x.end());
    std::vector<fftw_complex> out(bins);
    fftw_execute_dft_r2c(plan_cache().get(n), in.data(), out.data());
    for (std::size_t k = 0; k < bins; ++k) {
        power[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
    }
    return power;
}

} // namespace novelty::detail
