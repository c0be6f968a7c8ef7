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

#include "hqrate/waiting.h"

#include <cmath>
#include <limits>
#include <vector>
#include <string>

#include "hqrate/errors.h"
#include "hqrate/waiting_detail.h"

namespace hqrate {

namespace {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
   public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const {
        return sum_ + comp_;
    }

   private:
    double sum_ = 0;
    double comp_ = 0;
};

void require_N(std::uint64_t N) {
    if (N == 0) {
        throw InvalidParameterError("segment count N must be at least 1");
    }
}

void require_T0(double T0) {
    if (!(T0 > 0) || !std::isfinite(T0)) {
        throw InvalidParameterError("slot time T0 must be positive, got " + std::to_string(T0));
    }
}

void require_q(double q) {
    if (!(q >= 0 && q < 1)) {
        throw InvalidParameterError("failure probability q must lie in [0, 1), got " + std::to_string(q));
    }
}

void require_rows(int rows) {
    if (rows < 1) {
        throw InvalidParameterError("row count must be at least 1, got " + std::to_string(rows));
    }
}

// 1 - q^k for q = 1 - P, without cancellation at small P.
double one_minus_q_pow(double P, double k) {
    return -std::expm1(k * std::log1p(-P));
}

double harmonic(std::uint64_t N) {
    CompensatedSum s;
    for (std::uint64_t k = N; k >= 1; --k) {
        s.add(1.0 / static_cast<double>(k));
    }
    return s.value();
}

}  // namespace

SuccessProb::SuccessProb(double value) : value_(value) {
    if (!(value > 0 && value <= 1)) {
        throw InvalidParameterError("success probability must lie in (0, 1], got " + std::to_string(value));
    }
}

WaitingTime WaitingTime::from_steps(double steps, double T0_seconds) {
    require_T0(T0_seconds);
    return {steps, steps * T0_seconds};
}

std::uint64_t segments_for_level(int n) {
    if (n < 0 || n > 30) {
        throw InvalidParameterError("nesting level must lie in [0, 30], got " + std::to_string(n));
    }
    return std::uint64_t{1} << n;
}

namespace detail {

double z_series(std::uint64_t N, double P, std::uint64_t max_terms) {
    if (P == 1.0) {
        return 1.0;
    }
    const double log_q = std::log1p(-P);
    const double Nd = static_cast<double>(N);
    CompensatedSum acc;
    acc.add(1.0);  // t = 0: nothing has succeeded yet.
    for (std::uint64_t t = 1; t < max_terms; ++t) {
        const double q_t = std::exp(static_cast<double>(t) * log_q);
        const double term = -std::expm1(Nd * std::log1p(-q_t));
        acc.add(term);
        if (term < 1e-15 * acc.value()) {
            // Remaining terms decay like N q^t; close the tail geometrically.
            acc.add(term * (1 - P) / P);
            return acc.value();
        }
    }
    throw ConvergenceError("tail series for Z(N=" + std::to_string(N) + ", P=" + std::to_string(P) +
                           ") did not converge within " + std::to_string(max_terms) + " terms");
}

double z_asymptotic(std::uint64_t N, double P) {
    if (N < 4) {
        throw InvalidParameterError("asymptotic Z needs N >= 4");
    }
    // Euler-Maclaurin on f(t) = 1 - (1 - e^{-lambda t})^N: the integral is
    // H_N / lambda, f(0) contributes 1/2, and every odd derivative of f below
    // order N vanishes at t = 0.
    const double lambda = -std::log1p(-P);
    return harmonic(N) / lambda + 0.5;
}

double estimated_series_terms(std::uint64_t N, double P) {
    if (P == 1.0) {
        return 1.0;
    }
    const double lambda = -std::log1p(-P);
    return (std::log(static_cast<double>(N)) + 36.0) / lambda;
}

}  // namespace detail

double z_closed(std::uint64_t N, SuccessProb P) {
    require_N(N);
    if (N > kClosedFormMaxN) {
        return z_stable(N, P);
    }
    CompensatedSum s;
    std::uint64_t binom = 1;
    for (std::uint64_t k = 1; k <= N; ++k) {
        binom = binom * (N - k + 1) / k;
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        s.add(sign * static_cast<double>(binom) / one_minus_q_pow(P.value(), static_cast<double>(k)));
    }
    return s.value();
}

double z_recurrence(std::uint64_t N, SuccessProb P) {
    require_N(N);
    const double p = P.value();
    if (p == 1.0) {
        return 1.0;
    }
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    std::vector<double> Z(N + 1, 0.0);
    Z[1] = 1.0 / p;
    for (std::uint64_t m = 2; m <= N; ++m) {
        const double md = static_cast<double>(m);
        CompensatedSum s;
        s.add(1.0);
        for (std::uint64_t j = 1; j < m; ++j) {
            const double jd = static_cast<double>(j);
            const double log_w = std::lgamma(md + 1) - std::lgamma(jd + 1) - std::lgamma(md - jd + 1) + jd * log_q +
                                 (md - jd) * log_p;
            s.add(std::exp(log_w) * Z[j]);
        }
        Z[m] = s.value() / one_minus_q_pow(p, md);
    }
    return Z[N];
}

double z_stable(std::uint64_t N, SuccessProb P) {
    require_N(N);
    const double p = P.value();
    double z;
    if (detail::estimated_series_terms(N, p) <= static_cast<double>(kStableSeriesMaxTerms)) {
        z = detail::z_series(N, p, 2 * kStableSeriesMaxTerms);
    } else if (N >= 4) {
        z = detail::z_asymptotic(N, p);
    } else {
        z = z_closed(N, P);
    }
    if (!std::isfinite(z)) {
        throw ConvergenceError("Z(N=" + std::to_string(N) + ", P=" + std::to_string(p) + ") is not finite");
    }
    return z;
}

double rate_parallel(int n, SuccessProb P0, double T0_seconds) {
    require_T0(T0_seconds);
    return 1.0 / (T0_seconds * z_stable(segments_for_level(n), P0));
}

double rate_parallel_approx(int n, SuccessProb P0, double T0_seconds) {
    require_T0(T0_seconds);
    if (n < 0) {
        throw InvalidParameterError("nesting level must be nonnegative");
    }
    return std::pow(2.0 / 3.0, n) * P0.value() / T0_seconds;
}

double z_multiplexed(int rows, double q) {
    require_rows(rows);
    require_q(q);
    const double qr = std::pow(q, rows);
    return (1 + 2 * qr) / (1 - qr * qr);
}

double z_parallel_rows_1_2(double q) {
    require_q(q);
    const double q2 = q * q;
    const double q4 = q2 * q2;
    return (1 + q + 5 * q2 + 4 * q4) / (1 + q + q2 - q4 - q4 * q - q4 * q2);
}

double z_parallel_rows(int rows, double q) {
    require_rows(rows);
    require_q(q);
    if (q == 0) {
        return 1.0;
    }
    const double log_q = std::log(q);
    const double r = static_cast<double>(rows);
    CompensatedSum acc;
    acc.add(1.0);
    for (std::uint64_t t = 1; t < 2 * kStableSeriesMaxTerms; ++t) {
        const double q_t = std::exp(static_cast<double>(t) * log_q);
        // Probability that no row has both columns done after t slots.
        const double term = std::exp(r * std::log(q_t * (2 - q_t)));
        acc.add(term);
        if (term < 1e-16 * acc.value()) {
            const double ratio = std::pow(q, rows);
            acc.add(term * ratio / (1 - ratio));
            return acc.value();
        }
    }
    throw ConvergenceError("parallel-rows series did not converge for q=" + std::to_string(q));
}

PurificationTimeBounds purification_time_bounds(int n, SuccessProb P0, SuccessProb P1, double T0_seconds) {
    require_T0(T0_seconds);
    const std::uint64_t columns = segments_for_level(n);
    const double p0 = P0.value();
    const SuccessProb p_l0(p0 * P1.value() * (2 - p0) / (3 - 2 * p0));
    if (n == 0) {
        // A single column needs no bounds: the purified-pair time is exact.
        const double t = T0_seconds / p_l0.value();
        return {t, t, t};
    }
    const double z_gen = z_stable(2 * columns, P0);
    const double z_pur = z_stable(columns, P1);
    return {
        T0_seconds * (z_gen + z_pur),
        T0_seconds * z_stable(columns, p_l0),
        T0_seconds * z_gen * z_pur,
    };
}

SuccessProb effective_p_multi_round(SuccessProb P0, std::span<const double> p1_per_round) {
    if (p1_per_round.empty()) {
        throw InvalidParameterError("at least one purification round is required");
    }
    double p = P0.value();
    for (double p1 : p1_per_round) {
        const SuccessProb round(p1);
        p = p * round.value() * (2 - p) / (3 - 2 * p);
    }
    return SuccessProb(p);
}

SuccessProb effective_p_multiplexed(SuccessProb P0, int rows) {
    require_rows(rows);
    const double qr = std::pow(P0.failure(), rows);
    return SuccessProb((1 - qr * qr) / (1 + 2 * qr));
}

double rate_purified(int n, SuccessProb P_L0, double T0_seconds) {
    return rate_parallel(n, P_L0, T0_seconds);
}

double rate_purify_at_end(int n, SuccessProb P0, SuccessProb P1_final, double T0_seconds, AppendixDMode mode) {
    require_T0(T0_seconds);
    if (n < 1) {
        throw InvalidParameterError("purification at the last level needs n >= 1");
    }
    const int exponent = mode == AppendixDMode::TwoChains ? n + 1 : 2 * n;
    return P1_final.value() / (T0_seconds * z_stable(segments_for_level(exponent), P0));
}

SuccessProb p0_effective_temporal(SuccessProb P0, int n_pulses) {
    if (n_pulses < 1) {
        throw InvalidParameterError("pulse count must be at least 1");
    }
    if (P0.value() == 1.0) {
        return P0;
    }
    return SuccessProb(one_minus_q_pow(P0.value(), n_pulses));
}

}  // namespace hqrate
