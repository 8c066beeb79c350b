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

#include <span>
#include <vector>

namespace novelty::detail {

/// |X[k]|^2 for k = 0..N/2 where X is the unnormalized DFT of the real
/// input x. Backed by FFTW; safe to call concurrently.
std::vector<double> half_spectrum_power(std::span<const double> x);

} // namespace novelty::detail
