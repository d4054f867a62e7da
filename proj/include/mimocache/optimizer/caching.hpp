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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mimocache/analysis/coverage_table.hpp"
#include "mimocache/analysis/stp.hpp"
#include "mimocache/types.hpp"

namespace mimocache::optimizer {

using analysis::CoverageTable;

/// d/dw of p_n sum_k w (1-w)^{k-1} P^k, minus mu. Non-increasing in w when
/// the table is non-increasing in k.
inline double stationarity_residual(double w, double popularity, double mu, const CoverageTable& coverage)
{
    double total = 0.0;
    double miss = 1.0;  // (1-w)^{k-2} for k >= 2
    for (std::size_t i = 0; i < coverage.values.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        if (k == 1) {
            total += coverage.values[i];
            continue;
        }
        total += miss * (1.0 - k * w) * coverage.values[i];
        miss *= 1.0 - w;
    }
    return popularity * total - mu;
}

inline double stationarity_residual(double w, std::size_t n, double mu, std::span<const double> popularity,
                                    const CoverageTable& coverage)
{
    return stationarity_residual(w, popularity[n], mu, coverage);
}

/// Caching probability maximizing p (file success at b) - mu b over [0, 1].
inline double file_from_dual(double mu, double popularity, const CoverageTable& coverage)
{
    const double p1 = coverage.values.front();
    const double p2 = coverage.values.size() > 1 ? coverage.values[1] : 0.0;
    if (mu <= popularity * (p1 - p2)) {
        return 1.0;
    }
    if (mu >= popularity * coverage.sum()) {
        return 0.0;
    }
    const double tol = 1e-12 * popularity * coverage.sum();
    double lo = 0.0;
    double hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double r = stationarity_residual(mid, popularity, mu, coverage);
        if (std::abs(r) <= tol || mid == lo || mid == hi) {
            return mid;
        }
        (r > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Per-file optimum for a fixed multiplier, ignoring the budget.
inline CachePolicy cache_from_dual(double mu, std::span<const double> popularity, const CoverageTable& coverage)
{
    if (!(mu >= 0.0)) {
        throw DomainError("cache_from_dual: multiplier must be nonnegative");
    }
    CachePolicy out;
    out.b.reserve(popularity.size());
    for (double p : popularity) {
        out.b.push_back(file_from_dual(mu, p, coverage));
    }
    return out;
}

/// Multiplier bracket and the per-file optimal responses at its ends.
struct DualState {
    double mu_l = 0.0;
    double mu_u = 0.0;
    double epsilon = 0.0;
    double mu_star = 0.0;
    std::vector<double> roots;  // w_n(mu_star) before the budget blend
    int iterations = 0;
};

struct KktReport {
    double max_interior_residual = 0.0;  // max |r_n| over 0 < b_n < 1
    double min_full_residual = 0.0;      // min r_n over b_n = 1 (must be >= -1e-9)
    double max_empty_residual = 0.0;     // max r_n over b_n = 0 (must be <= 1e-9)
    double budget_gap = 0.0;             // |sum b - M|
    int interior = 0;
    int full = 0;
    int empty = 0;
};

struct OptimizationResult {
    CachePolicy policy;
    DualState dual;
    KktReport kkt;
    double stp = 0.0;
    std::string note;
};

inline KktReport kkt_report(const CachePolicy& policy, double mu, std::span<const double> popularity,
                            const CoverageTable& coverage, double budget)
{
    constexpr double kEdge = 1e-12;
    KktReport r;
    r.min_full_residual = std::numeric_limits<double>::infinity();
    r.max_empty_residual = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < policy.size(); ++n) {
        const double b = policy.b[n];
        const double res = stationarity_residual(b, n, mu, popularity, coverage);
        if (b >= 1.0 - kEdge) {
            ++r.full;
            r.min_full_residual = std::min(r.min_full_residual, res);
        } else if (b <= kEdge) {
            ++r.empty;
            r.max_empty_residual = std::max(r.max_empty_residual, res);
        } else {
            ++r.interior;
            r.max_interior_residual = std::max(r.max_interior_residual, std::abs(res));
        }
    }
    if (r.full == 0) {
        r.min_full_residual = 0.0;
    }
    if (r.empty == 0) {
        r.max_empty_residual = 0.0;
    }
    r.budget_gap = std::abs(policy.total() - budget);
    return r;
}

/// Maximizes the STP subject to sum b = M, 0 <= b <= 1 by bisection on the
/// budget multiplier. The final policy mixes the responses at both ends of
/// the converged bracket so the budget holds exactly even where the
/// response jumps.
inline OptimizationResult optimize_caching(const ContentParams& content, const CoverageTable& coverage,
                                           double epsilon = 1e-12)
{
    content.validate();
    analysis::check_table(coverage);
    if (!(epsilon > 0.0)) {
        throw DomainError("optimize_caching: tolerance must be positive");
    }
    const std::span<const double> p = content.popularity;
    const std::size_t N = p.size();
    const double M = content.cache_size;

    OptimizationResult out;
    out.dual.epsilon = epsilon;
    if (content.cache_size >= static_cast<int>(N)) {
        out.policy.b.assign(N, 1.0);
        out.note = "cache size covers the library: caching every file is optimal";
    } else if (content.cache_size == 0) {
        out.policy.b.assign(N, 0.0);
        out.note = "zero cache size";
    } else {
        const double total = coverage.sum();
        const double drop = coverage.values.front() - (coverage.values.size() > 1 ? coverage.values[1] : 0.0);
        const auto [pmin, pmax] = std::minmax_element(p.begin(), p.end());
        double mu_u = *pmax * total;
        double mu_l = *pmin * drop;
        // Relative to the current upper end: popularities spanning many
        // decades put mu* far below the initial bracket.
        int it = 0;
        for (; it < 4000 && mu_u - mu_l > epsilon * mu_u; ++it) {
            const double mid = 0.5 * (mu_l + mu_u);
            if (mid <= mu_l || mid >= mu_u) {
                break;
            }
            if (cache_from_dual(mid, p, coverage).total() < M) {
                mu_u = mid;
            } else {
                mu_l = mid;
            }
        }
        const CachePolicy upper = cache_from_dual(mu_u, p, coverage);
        const CachePolicy lower = cache_from_dual(mu_l, p, coverage);
        const double s_u = upper.total();
        const double s_l = lower.total();
        const double theta = s_l > s_u ? std::clamp((M - s_u) / (s_l - s_u), 0.0, 1.0) : 0.0;
        out.policy.b.resize(N);
        for (std::size_t n = 0; n < N; ++n) {
            out.policy.b[n] = std::clamp(upper.b[n] + theta * (lower.b[n] - upper.b[n]), 0.0, 1.0);
        }
        out.dual.mu_l = mu_l;
        out.dual.mu_u = mu_u;
        out.dual.mu_star = 0.5 * (mu_l + mu_u);
        out.dual.roots = cache_from_dual(out.dual.mu_star, p, coverage).b;
        out.dual.iterations = it;
    }
    out.kkt = kkt_report(out.policy, out.dual.mu_star, p, coverage, std::min<double>(M, static_cast<double>(N)));
    out.stp = analysis::stp_analytic(p, out.policy, coverage);
    return out;
}

/// Caches the M most popular files; equal popularity favors the lower index.
inline CachePolicy mpc_policy(const ContentParams& content)
{
    content.validate();
    const std::size_t N = content.popularity.size();
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return content.popularity[a] > content.popularity[b]; });
    CachePolicy out;
    out.b.assign(N, 0.0);
    const std::size_t M = std::min<std::size_t>(N, static_cast<std::size_t>(content.cache_size));
    for (std::size_t i = 0; i < M; ++i) {
        out.b[order[i]] = 1.0;
    }
    return out;
}

/// b_n = M / N for every file.
inline CachePolicy uniform_policy(const ContentParams& content)
{
    const std::size_t N = content.popularity.size();
    CachePolicy out;
    out.b.assign(N, std::min(1.0, static_cast<double>(content.cache_size) / static_cast<double>(N)));
    return out;
}

} // namespace mimocache::optimizer
