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

#ifndef HQRATE_RNG_H
#define HQRATE_RNG_H

#include <cmath>
#include <cstdint>

namespace hqrate {

inline std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** keyed by (seed, stream). Each Monte Carlo trial owns one
/// stream, so trial outcomes do not depend on scheduling.
class TrialRng {
   public:
    TrialRng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t k = stream;
        std::uint64_t key = splitmix64(k) ^ seed;
        for (auto &word : s_) {
            word = splitmix64(key);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in (0, 1].
    double uniform_open0() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    bool bernoulli(double p) {
        return uniform_open0() <= p;
    }

    /// Number of slots up to and including the first success.
    std::uint64_t geometric(double p) {
        if (p >= 1.0) {
            return 1;
        }
        const double u = uniform_open0();
        return 1 + static_cast<std::uint64_t>(std::floor(std::log(u) / std::log1p(-p)));
    }

   private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

}  // namespace hqrate

#endif
