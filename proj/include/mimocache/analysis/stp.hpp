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
#include <span>

#include "mimocache/analysis/coverage_table.hpp"
#include "mimocache/types.hpp"

namespace mimocache::analysis {

/// Contribution of one file cached with probability b: sum_k b (1-b)^{k-1} P^k.
inline double file_success(double b, const CoverageTable& coverage)
{
    double total = 0.0;
    double miss = 1.0;  // (1-b)^{k-1}
    for (double p : coverage.values) {
        total += b * miss * p;
        miss *= 1.0 - b;
    }
    return total;
}

/// Successful transmission probability of policy b under request law p.
inline double stp_analytic(std::span<const double> popularity, const CachePolicy& policy,
                           const CoverageTable& coverage)
{
    if (popularity.size() != policy.size()) {
        throw DimensionError("stp_analytic: popularity has " + std::to_string(popularity.size()) +
                             " entries but the policy has " + std::to_string(policy.size()));
    }
    if (coverage.values.size() != static_cast<std::size_t>(coverage.cluster_size) || coverage.values.empty()) {
        throw DimensionError("stp_analytic: coverage table must hold K entries");
    }
    double total = 0.0;
    for (std::size_t n = 0; n < popularity.size(); ++n) {
        const double b = policy.b[n];
        if (!(b >= 0.0 && b <= 1.0)) {
            throw ConstraintViolation("stp_analytic: cache probability outside [0,1]");
        }
        total += popularity[n] * file_success(b, coverage);
    }
    return total;
}

} // namespace mimocache::analysis
