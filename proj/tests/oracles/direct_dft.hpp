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

#include <vector>

// O(N^2) one-sided periodogram evaluated term by term in long double.
namespace oracle {

std::vector<double> direct_periodogram(const std::vector<double>& x, double fs);

// Mean of x^2, accumulated in long double.
double mean_square(const std::vector<double>& x);

} // namespace oracle
