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
#include <string>

#include "mimocache/analysis/coverage_table.hpp"
#include "mimocache/numerics/special.hpp"

namespace mimocache::analysis {

enum class BoundKind { Upper, Lower };

namespace detail {

inline void check_coverage_args(int k, int K, int L, double gamma, double alpha)
{
    if (K < 1 || k < 1 || k > K) {
        throw DomainError("coverage: need 1 <= k <= K, got k=" + std::to_string(k) + ", K=" + std::to_string(K));
    }
    if (L < 1) {
        throw DomainError("coverage: antennas must be >= 1");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw DomainError("coverage: SIR target must be positive and finite");
    }
    if (!(alpha > 2.0)) {
        throw DomainError("coverage: path-loss exponent must exceed 2");
    }
}

} // namespace detail

/// Alzer-type bound on MF coverage at serving rank k. The Gamma(L,1) CCDF is
/// replaced by 1 - (1 - e^{-x g})^L with x = (L!)^{-1/L} (upper) or x = 1
/// (lower); both reduce to closed forms via the incomplete Beta function.
inline double coverage_mf_bound(int k, int K, int L, double gamma, double alpha, BoundKind kind)
{
    detail::check_coverage_args(k, K, L, gamma, alpha);
    const double x = kind == BoundKind::Upper ? numerics::GainLaw::matched_filter(L).alzer_constant : 1.0;
    const double a = 2.0 / alpha;
    const double b = 1.0 - a;
    double total = 0.0;
    for (int l = 1; l <= L; ++l) {
        const double s = x * gamma * l;
        const double z = 1.0 / (1.0 + s);
        const double scale = a * std::pow(s, a);
        const double near = 1.0 - scale * numerics::incomplete_beta(a, b, z);
        const double far = scale * numerics::incomplete_beta_complement(a, b, z);
        const double sign = (l % 2 == 1) ? 1.0 : -1.0;
        total += sign * numerics::binomial(L, l) * std::pow(near, k - 1) / std::pow(1.0 + far, k);
    }
    return clamp_probability(total, "coverage_mf_bound");
}

/// Single-antenna MF coverage at alpha = 4.
inline double coverage_closed_form_mf(int k, double gamma)
{
    if (k < 1) {
        throw DomainError("coverage_closed_form_mf: k must be >= 1");
    }
    if (!(gamma > 0.0)) {
        throw DomainError("coverage_closed_form_mf: SIR target must be positive");
    }
    const double root = std::sqrt(gamma);
    const double c = 1.0 / std::sqrt(1.0 + gamma);
    const double near = 1.0 - root * std::asin(c);
    const double far = 1.0 + root * std::acos(c);
    return clamp_probability(std::pow(near, k - 1) / std::pow(far, k), "coverage_closed_form_mf");
}

/// Approximate ZF bound: interference from beyond r_K with delta^2 replaced
/// by its mean k/K. Upper uses kappa = (m!)^{-1/m}, m = L-K+1; lower uses 1.
inline double coverage_zf_bound(int k, int K, int L, double gamma, double alpha, BoundKind kind,
                                const numerics::QuadratureSpec& spec = {})
{
    detail::check_coverage_args(k, K, L, gamma, alpha);
    const numerics::GainLaw law = numerics::GainLaw::zero_forcing(L, K);
    const double kappa = kind == BoundKind::Upper ? law.alzer_constant : 1.0;
    const int m = law.shape;
    const double ratio = std::sqrt(static_cast<double>(k) / K);
    double total = 0.0;
    for (int l = 1; l <= m; ++l) {
        const double t = std::pow(kappa * gamma * l, 2.0 / alpha);
        const double tail = numerics::interference_tail_integral(1.0 / (ratio * t), alpha, spec);
        const double sign = (l % 2 == 1) ? 1.0 : -1.0;
        total += sign * numerics::binomial(m, l) / std::pow(1.0 + t * ratio * tail, k);
    }
    return clamp_probability(total, "coverage_zf_bound");
}

/// ZF bound at L = K, alpha = 4, specialized directly from the general form:
/// 1 / [1 + sqrt(k g / K) atan(sqrt(k g / K))]^k.
inline double coverage_closed_form_zf(int k, int K, double gamma)
{
    if (K < 1 || k < 1 || k > K || !(gamma > 0.0)) {
        throw DomainError("coverage_closed_form_zf: need 1 <= k <= K and gamma > 0");
    }
    const double c = std::sqrt(k * gamma / K);
    return clamp_probability(1.0 / std::pow(1.0 + c * std::atan(c), k), "coverage_closed_form_zf");
}

/// Alternative reading of the same special case with arccot(K / (k g)) in
/// place of arccot(sqrt(K / (k g))). It agrees with the general form only at
/// k g = K and is kept for comparison against simulation.
inline double coverage_closed_form_zf_printed(int k, int K, double gamma)
{
    if (K < 1 || k < 1 || k > K || !(gamma > 0.0)) {
        throw DomainError("coverage_closed_form_zf_printed: need 1 <= k <= K and gamma > 0");
    }
    const double c = std::sqrt(k * gamma / K);
    return clamp_probability(1.0 / std::pow(1.0 + c * std::atan(k * gamma / K), k),
                             "coverage_closed_form_zf_printed");
}

} // namespace mimocache::analysis
