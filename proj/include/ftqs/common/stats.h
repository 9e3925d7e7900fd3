// Copyright 2026 The ftqs Authors
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

#ifndef FTQS_COMMON_STATS_H
#define FTQS_COMMON_STATS_H

#include <cmath>
#include <cstdint>
#include <utility>

namespace ftqs {

/// Wilson score interval for `successes` out of `trials` (z = 1.96 for 95%).
inline std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials, double z = 1.959963984540054) {
    if (trials == 0) {
        return {0.0, 1.0};
    }
    double n = double(trials);
    double phat = double(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    double lo = center - half;
    double hi = center + half;
    return {lo < 0.0 ? 0.0 : lo, hi > 1.0 ? 1.0 : hi};
}

/// log of the binomial coefficient C(n, k).
inline double log_choose(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace ftqs

#endif
