// Copyright 2026 The hqrate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HQRATE_WAITING_DETAIL_H
#define HQRATE_WAITING_DETAIL_H

#include <cstdint>

namespace hqrate::detail {

// Explicit tail series for Z(N, P); throws ConvergenceError past max_terms.
double z_series(std::uint64_t N, double P, std::uint64_t max_terms);

// H_N / lambda + 1/2 with lambda = -ln(1 - P). Accurate for N >= 4 once
// lambda is small; z_stable switches to it when the series would be long.
double z_asymptotic(std::uint64_t N, double P);

double estimated_series_terms(std::uint64_t N, double P);

}  // namespace hqrate::detail

#endif
