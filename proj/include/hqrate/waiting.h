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

#ifndef HQRATE_WAITING_H
#define HQRATE_WAITING_H

#include <cstdint>
#include <span>

namespace hqrate {

/// A per-slot success probability in (0, 1].
class SuccessProb {
   public:
    explicit SuccessProb(double value);
    double value() const {
        return value_;
    }
    double failure() const {
        return 1.0 - value_;
    }

   private:
    double value_;
};

/// Expected waiting time, both in slots of T0 and in seconds.
struct WaitingTime {
    double steps;
    double seconds;
    static WaitingTime from_steps(double steps, double T0_seconds);
};

/// Expected number of synchronized slots until N independent segments, each
/// succeeding with probability P per slot and held in memory afterwards, have
/// all succeeded: the expected maximum of N geometric(P) variables.
///
/// Three routes are provided. z_closed evaluates the alternating binomial sum
/// directly; it cancels catastrophically for large N, so above
/// kClosedFormMaxN it delegates to z_stable. z_recurrence solves the
/// positive-term recurrence in O(N^2). z_stable sums the tail series
/// sum_{t>=0} (1 - (1 - q^t)^N), which is the production path.
constexpr std::uint64_t kClosedFormMaxN = 20;
double z_closed(std::uint64_t N, SuccessProb P);
double z_recurrence(std::uint64_t N, SuccessProb P);
double z_stable(std::uint64_t N, SuccessProb P);

/// Maximum number of explicit series terms before z_stable switches to its
/// asymptotic evaluation (N >= 4) or to the closed form (N < 4, where the
/// alternating sum has at most three terms and does not cancel).
constexpr std::uint64_t kStableSeriesMaxTerms = 5'000'000;

/// Number of segments 2^n for nesting level n; throws above 2^30.
std::uint64_t segments_for_level(int n);

/// 1 / (T0 Z(2^n, P0)).
double rate_parallel(int n, SuccessProb P0, double T0_seconds);

/// (2/3)^n P0 / T0, the small-P0 approximation common in the literature.
double rate_parallel_approx(int n, SuccessProb P0, double T0_seconds);

/// Two columns, r rows, any row may serve each column:
/// (1 + 2 q^r) / (1 - q^{2r}).
double z_multiplexed(int rows, double q);

/// Two columns, two rows, both successes required in the same row:
/// (1 + q + 5q^2 + 4q^4) / (1 + q + q^2 - q^4 - q^5 - q^6).
double z_parallel_rows_1_2(double q);

/// Two columns, r rows, same-row requirement, for any r via the series
/// sum_{t>=0} (1 - (1 - q^t)^2)^r. Reduces to z_parallel_rows_1_2 at r = 2.
double z_parallel_rows(int rows, double q);

struct PurificationTimeBounds {
    double lower_s;
    double approx_s;
    double upper_s;
};

/// Waiting-time estimates for one purification round at the first level
/// followed by n swap levels:
///   upper  = T0 Z(2^{n+1}, P0) Z(2^n, P1)   purification waits for all pairs
///   lower  = T0 (Z(2^{n+1}, P0) + Z(2^n, P1))   failures keep their pairs
///   approx = T0 Z(2^n, P_L0),  P_L0 = P0 P1 (2 - P0) / (3 - 2 P0)
/// At n = 0 all three are the exact T0 (3 - 2P0) / (P0 P1 (2 - P0)); the
/// printed bounds would put upper below lower there. Elsewhere the ordering
/// lower <= approx <= upper is not guaranteed near P0, P1 -> 1.
PurificationTimeBounds purification_time_bounds(int n, SuccessProb P0, SuccessProb P1, double T0_seconds);

/// Effective elementary success probability after k purification rounds:
/// P_{k} = P_{k-1} P1_k (2 - P_{k-1}) / (3 - 2 P_{k-1}), P_0 = P0.
SuccessProb effective_p_multi_round(SuccessProb P0, std::span<const double> p1_per_round);

/// Effective probability standing in for r-row multiplexing at n > 1:
/// (1 - q^{2r}) / (1 + 2 q^r).
SuccessProb effective_p_multiplexed(SuccessProb P0, int rows);

/// 1 / (T0 Z(2^n, P_L0)).
double rate_purified(int n, SuccessProb P_L0, double T0_seconds);

/// How many elementary pairs feed a single end-of-chain purification.
enum class AppendixDMode {
    TwoChains,   ///< two parallel full chains: 2^{n+1} pairs
    Verbatim2n,  ///< subscript as printed, Z_{2n} read as 2^{2n} pairs
};

/// P1 / (T0 Z(N, P0)) with N chosen by mode. Requires n >= 1.
double rate_purify_at_end(int n, SuccessProb P0, SuccessProb P1_final, double T0_seconds,
                          AppendixDMode mode = AppendixDMode::TwoChains);

/// Temporal multiplexing over n_pulses probe pulses: 1 - (1 - P0)^n_pulses.
SuccessProb p0_effective_temporal(SuccessProb P0, int n_pulses);

}  // namespace hqrate

#endif
