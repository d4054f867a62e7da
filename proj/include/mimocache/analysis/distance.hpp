/*
   Copyright 2026 The mimocache Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "mimocache/errors.hpp"
#include "mimocache/numerics/quadrature.hpp"
#include "mimocache/numerics/special.hpp"

namespace mimocache::analysis {

namespace detail {

inline void check_intensity(double lambda_b)
{
    if (!(lambda_b > 0.0)) {
        throw DomainError("distance law: intensity must be positive");
    }
}

inline void check_ranks(int k, int K, bool strict)
{
    if (k < 1 || K < 1 || k > K || (strict && k == K)) {
        throw DomainError("distance law: need 1 <= k " + std::string(strict ? "<" : "<=") + " K, got k=" +
                          std::to_string(k) + ", K=" + std::to_string(K));
    }
}

} // namespace detail

/// Density of the distance to the k-th nearest point of a PPP with intensity
/// lambda_b: 2 (lambda pi r^2)^k / (r Gamma(k)) exp(-lambda pi r^2).
inline double kth_nearest_pdf(double r, int k, double lambda_b)
{
    detail::check_intensity(lambda_b);
    detail::check_ranks(k, k, false);
    if (r < 0.0) {
        throw DomainError("kth_nearest_pdf: negative distance");
    }
    if (r == 0.0) {
        return 0.0;
    }
    const double t = lambda_b * std::numbers::pi * r * r;
    return 2.0 / r * std::exp(k * std::log(t) - t - std::lgamma(static_cast<double>(k)));
}

inline double kth_nearest_cdf(double r, int k, double lambda_b)
{
    detail::check_intensity(lambda_b);
    detail::check_ranks(k, k, false);
    if (r <= 0.0) {
        return 0.0;
    }
    return 1.0 - numerics::gamma_ccdf(lambda_b * std::numbers::pi * r * r, k);
}

/// Smallest radius beyond which the k-th nearest distance has mass below
/// `tail_mass`.
inline double kth_nearest_tail_radius(int k, double lambda_b, double tail_mass = 1e-10)
{
    detail::check_intensity(lambda_b);
    detail::check_ranks(k, k, false);
    double lo = 0.0;
    double hi = static_cast<double>(k) + 1.0;
    while (numerics::gamma_ccdf(hi, k) > tail_mass) {
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (numerics::gamma_ccdf(mid, k) > tail_mass ? lo : hi) = mid;
    }
    return std::sqrt(hi / (lambda_b * std::numbers::pi));
}

/// Density of r_k given r_K (k < K): the k-1 nearer points are uniform in the
/// disc of radius r_K.
inline double conditional_ratio_pdf(double r_k, double r_K, int k, int K)
{
    detail::check_ranks(k, K, true);
    if (!(r_K > 0.0) || r_k < 0.0 || r_k > r_K) {
        throw DomainError("conditional_ratio_pdf: need 0 <= r_k <= r_K, r_K > 0");
    }
    const double u = (r_k / r_K) * (r_k / r_K);
    const double log_beta = std::lgamma(static_cast<double>(K - k)) + std::lgamma(static_cast<double>(k)) -
                            std::lgamma(static_cast<double>(K));
    return 2.0 * r_k / (r_K * r_K) *
           std::exp((k - 1) * std::log(u) + (K - k - 1) * std::log1p(-u) - log_beta);
}

/// Joint density of (r_k, r_K) on 0 <= r_k <= r_K, k < K.
inline double joint_pdf(double r_k, double r_K, int k, int K, double lambda_b)
{
    detail::check_intensity(lambda_b);
    detail::check_ranks(k, K, true);
    if (r_k < 0.0 || r_K < r_k) {
        throw DomainError("joint_pdf: need 0 <= r_k <= r_K");
    }
    if (r_k == 0.0 || r_K == r_k) {
        return 0.0;
    }
    const double c = lambda_b * std::numbers::pi;
    const double log_norm = std::log(4.0) + K * std::log(c) - std::lgamma(static_cast<double>(K - k)) -
                            std::lgamma(static_cast<double>(k));
    return std::exp(log_norm + (2 * k - 1) * std::log(r_k) + std::log(r_K) +
                    (K - k - 1) * std::log((r_K - r_k) * (r_K + r_k)) - c * r_K * r_K);
}

/// Density of delta = r_k / r_K on [0, 1], k < K.
inline double delta_pdf(double x, int k, int K)
{
    detail::check_ranks(k, K, true);
    if (x < 0.0 || x > 1.0) {
        throw DomainError("delta_pdf: ratio must lie in [0,1]");
    }
    if (x == 0.0) {
        return 0.0;
    }
    const double log_norm = std::log(2.0) + std::lgamma(static_cast<double>(K)) -
                            std::lgamma(static_cast<double>(k)) - std::lgamma(static_cast<double>(K - k));
    if (x == 1.0) {
        return K - k - 1 == 0 ? std::exp(log_norm) : 0.0;
    }
    return std::exp(log_norm + (2 * k - 1) * std::log(x) + (K - k - 1) * std::log1p(-x * x));
}

/// E[delta^2] by quadrature of the delta density (1 when k = K).
inline double expected_delta_squared(int k, int K, const numerics::QuadratureSpec& spec = {})
{
    detail::check_ranks(k, K, false);
    if (k == K) {
        return 1.0;
    }
    return numerics::integrate([&](double x) { return x * x * delta_pdf(x, k, K); }, 0.0, 1.0, spec).value;
}

enum class DistanceKind { KthNearest, ConditionalRatio, Joint, RatioDelta };

struct DistanceLaw {
    DistanceKind kind = DistanceKind::KthNearest;
    double lambda_b = 5e-5;
    int k = 1;
    int K = 2;
};

/// Evaluates the law's density. `x` is r_k (or delta); `y` is r_K for the
/// conditional and joint laws and ignored otherwise.
inline double distance_pdf(const DistanceLaw& law, double x, double y = 0.0)
{
    switch (law.kind) {
    case DistanceKind::KthNearest:
        return kth_nearest_pdf(x, law.k, law.lambda_b);
    case DistanceKind::ConditionalRatio:
        return conditional_ratio_pdf(x, y, law.k, law.K);
    case DistanceKind::Joint:
        return joint_pdf(x, y, law.k, law.K, law.lambda_b);
    case DistanceKind::RatioDelta:
        return delta_pdf(x, law.k, law.K);
    }
    throw DomainError("distance_pdf: unknown law");
}

} // namespace mimocache::analysis
