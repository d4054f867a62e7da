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

#include <cstddef>

#include "mimocache/analysis/bounds.hpp"
#include "mimocache/analysis/coverage_table.hpp"
#include "mimocache/analysis/exact.hpp"
#include "mimocache/network/params.hpp"
#include "mimocache/network/simulator.hpp"

namespace mimocache::analysis {

/// Coverage for one analytic method at params.gamma. ClosedForm is only
/// defined for alpha = 4 with L = 1 (MF) or L = K (ZF).
inline double analytic_coverage(Scheme scheme, Method method, const network::NetworkParams& params, int k)
{
    const int K = params.cluster_size;
    const int L = params.antennas;
    const double g = params.gamma;
    const double a = params.alpha;
    switch (method) {
    case Method::Upper:
    case Method::Lower: {
        const BoundKind kind = method == Method::Upper ? BoundKind::Upper : BoundKind::Lower;
        return scheme == Scheme::MatchedFilter ? coverage_mf_bound(k, K, L, g, a, kind)
                                               : coverage_zf_bound(k, K, L, g, a, kind);
    }
    case Method::Exact:
        return scheme == Scheme::MatchedFilter ? coverage_mf_exact(k, K, L, g, a, params.lambda_b)
                                               : coverage_zf_exact(k, K, L, g, a, params.lambda_b);
    case Method::ClosedForm:
        if (a != 4.0 || (scheme == Scheme::MatchedFilter ? L != 1 : L != K)) {
            throw DomainError("closed form needs alpha = 4 and L = 1 (mf) or L = K (zf)");
        }
        return scheme == Scheme::MatchedFilter ? coverage_closed_form_mf(k, g) : coverage_closed_form_zf(k, K, g);
    case Method::MonteCarlo:
        break;
    }
    throw DomainError("analytic_coverage: Monte Carlo is not an analytic method");
}

inline CoverageTable analytic_table(Scheme scheme, Method method, const network::NetworkParams& params)
{
    params.validate(scheme);
    CoverageTable t{scheme, method, params.cluster_size, {}};
    for (int k = 1; k <= params.cluster_size; ++k) {
        t.values.push_back(analytic_coverage(scheme, method, params, k));
    }
    return t;
}

/// Table of Monte Carlo estimates at one SIR target of a grid.
inline CoverageTable mc_table(const network::CoverageGrid& grid, std::size_t gamma_index)
{
    CoverageTable t{grid.scheme, Method::MonteCarlo, static_cast<int>(grid.by_rank.size()), {}};
    for (const auto& rank : grid.by_rank) {
        t.values.push_back(rank.at(gamma_index).estimate);
    }
    return t;
}

} // namespace mimocache::analysis
