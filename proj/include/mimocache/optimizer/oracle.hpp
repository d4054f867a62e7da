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
#include <cstdint>
#include <vector>

#include "mimocache/analysis/stp.hpp"
#include "mimocache/network/rng.hpp"
#include "mimocache/types.hpp"

namespace mimocache::optimizer {

inline constexpr std::size_t kOracleMaxFiles = 6;

/// Euclidean projection onto {0 <= b <= 1, sum b = budget}: b = clip(v - tau)
/// with tau found by bisection.
inline std::vector<double> project_box_simplex(std::span<const double> v, double budget)
{
    const auto n = static_cast<double>(v.size());
    if (budget < 0.0 || budget > n) {
        throw ConstraintViolation("project_box_simplex: budget outside [0, N]");
    }
    auto clipped_sum = [&](double tau) {
        double s = 0.0;
        for (double x : v) {
            s += std::clamp(x - tau, 0.0, 1.0);
        }
        return s;
    };
    double lo = *std::min_element(v.begin(), v.end()) - 1.0;
    double hi = *std::max_element(v.begin(), v.end());
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (clipped_sum(mid) > budget ? lo : hi) = mid;
    }
    const double tau = 0.5 * (lo + hi);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::clamp(v[i] - tau, 0.0, 1.0);
    }
    return out;
}

struct OracleResult {
    CachePolicy policy;
    double stp = 0.0;
    std::vector<double> start_stps;  // final STP reached from each start
};

/// Direct maximization for tiny libraries: projected gradient ascent with
/// finite-difference gradients from random feasible starts, then pairwise
/// mass transfers down to `grid_resolution` and below.
inline OracleResult brute_force_oracle(const ContentParams& content, const analysis::CoverageTable& coverage,
                                       double grid_resolution = 1e-3, int starts = 20, std::uint64_t seed = 1)
{
    content.validate();
    const std::size_t N = content.popularity.size();
    if (N > kOracleMaxFiles) {
        throw DimensionError("brute_force_oracle: at most " + std::to_string(kOracleMaxFiles) + " files, got " +
                             std::to_string(N));
    }
    if (!(grid_resolution > 0.0 && grid_resolution <= 0.5)) {
        throw DomainError("brute_force_oracle: grid resolution must lie in (0, 0.5]");
    }
    const double M = std::min<double>(content.cache_size, static_cast<double>(N));
    const std::span<const double> p = content.popularity;
    auto objective = [&](const std::vector<double>& b) { return analysis::stp_analytic(p, CachePolicy{b}, coverage); };

    auto gradient = [&](const std::vector<double>& b) {
        constexpr double h = 1e-6;
        std::vector<double> g(N);
        for (std::size_t n = 0; n < N; ++n) {
            const double lo = std::max(0.0, b[n] - h);
            const double hi = std::min(1.0, b[n] + h);
            const double f_lo = p[n] * analysis::file_success(lo, coverage);
            const double f_hi = p[n] * analysis::file_success(hi, coverage);
            g[n] = (f_hi - f_lo) / (hi - lo);
        }
        return g;
    };

    auto ascend = [&](std::vector<double> b) {
        double f = objective(b);
        double step = 1.0;
        for (int it = 0; it < 5000 && step > 1e-14; ++it) {
            const std::vector<double> g = gradient(b);
            std::vector<double> trial(N);
            for (std::size_t n = 0; n < N; ++n) {
                trial[n] = b[n] + step * g[n];
            }
            trial = project_box_simplex(trial, M);
            const double f_trial = objective(trial);
            if (f_trial > f) {
                const double gain = f_trial - f;
                b = std::move(trial);
                f = f_trial;
                step *= 1.5;
                if (gain < 1e-15) {
                    break;
                }
            } else {
                step *= 0.5;
            }
        }
        return b;
    };

    // Moves mass between file pairs while that helps, refining the step.
    auto refine = [&](std::vector<double> b) {
        double f = objective(b);
        for (double delta = grid_resolution; delta > 1e-10; delta *= 0.5) {
            bool improved = true;
            while (improved) {
                improved = false;
                for (std::size_t i = 0; i < N; ++i) {
                    for (std::size_t j = 0; j < N; ++j) {
                        if (i == j) {
                            continue;
                        }
                        const double d = std::min({delta, 1.0 - b[i], b[j]});
                        if (d <= 0.0) {
                            continue;
                        }
                        b[i] += d;
                        b[j] -= d;
                        const double f_new = objective(b);
                        if (f_new > f + 1e-16) {
                            f = f_new;
                            improved = true;
                        } else {
                            b[i] -= d;
                            b[j] += d;
                        }
                    }
                }
            }
        }
        return b;
    };

    OracleResult out;
    double best = -1.0;
    for (int s = 0; s < starts; ++s) {
        network::RngStream rng(seed, static_cast<std::uint64_t>(s));
        std::vector<double> start(N);
        for (double& x : start) {
            x = rng.uniform() * 2.0 - 0.5;
        }
        std::vector<double> b = refine(ascend(project_box_simplex(start, M)));
        const double f = objective(b);
        out.start_stps.push_back(f);
        if (f > best) {
            best = f;
            out.policy.b = std::move(b);
        }
    }
    out.stp = best;
    return out;
}

} // namespace mimocache::optimizer
