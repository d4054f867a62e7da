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

#include "mimocache/network/simulator.hpp"
#include "mimocache/types.hpp"

namespace mimocache::network {

/// p_n = n^-delta / sum_j j^-delta, n = 1..N.
inline std::vector<double> zipf_popularity(int library_size, double delta)
{
    if (library_size < 1) {
        throw DomainError("zipf_popularity: library size must be >= 1");
    }
    if (!(delta >= 0.0)) {
        throw DomainError("zipf_popularity: skewness must be nonnegative");
    }
    std::vector<double> p(static_cast<std::size_t>(library_size));
    double total = 0.0;
    for (int n = 1; n <= library_size; ++n) {
        p[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), -delta);
    }
    // Smallest terms first keeps the normalizer accurate.
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        total += *it;
    }
    for (double& v : p) {
        v /= total;
    }
    return p;
}

inline ContentParams zipf_content(int library_size, int cache_size, double delta)
{
    return {zipf_popularity(library_size, delta), cache_size};
}

/// One SBS cache drawn so that file n is present with probability exactly
/// b_n and at most M files are stored: the masses b_n are laid end to end on
/// [0, M), one uniform offset u is drawn, and the file covering u + j is
/// cached for each j = 0..M-1. Returns sorted 0-based file indices.
inline std::vector<int> sample_cache_realization(const CachePolicy& policy, int cache_size, RngStream& rng)
{
    policy.check_feasible(static_cast<double>(cache_size));
    std::vector<int> cached;
    cached.reserve(static_cast<std::size_t>(cache_size));
    const double u = rng.uniform();
    double start = 0.0;
    int slot = 0;
    for (std::size_t n = 0; n < policy.size() && slot < cache_size; ++n) {
        const double end = start + policy.b[n];
        // Each interval has length <= 1, so it covers at most one point u + j.
        while (slot < cache_size && slot + u < start) {
            ++slot;
        }
        if (slot < cache_size && slot + u >= start && slot + u < end) {
            cached.push_back(static_cast<int>(n));
            ++slot;
        }
        start = end;
    }
    return cached;
}

/// Probability that the typical user's request is found in its K-nearest
/// cluster and delivered with SIR >= gamma by the nearest SBS holding it.
inline ProportionEstimate estimate_stp_mc(const NetworkParams& params, const ContentParams& content,
                                          const CachePolicy& policy, Scheme scheme, std::uint64_t trials,
                                          std::uint64_t seed, const McOptions& options = {})
{
    params.validate(scheme);
    content.validate();
    if (policy.size() != content.popularity.size()) {
        throw DimensionError("estimate_stp_mc: policy and popularity lengths differ");
    }
    policy.check_feasible(static_cast<double>(content.cache_size));
    if (trials < 1) {
        throw DomainError("estimate_stp_mc: need at least one trial");
    }

    std::vector<double> cdf(content.popularity.size());
    double acc = 0.0;
    for (std::size_t n = 0; n < cdf.size(); ++n) {
        acc += content.popularity[n];
        cdf[n] = acc;
    }

    const unsigned workers = resolve_workers(options.workers);
    std::vector<detail::TrialState> state(workers);
    std::vector<std::uint8_t> success(trials, 0);
    const int K = params.cluster_size;
    for_each_trial(trials, workers, [&](std::uint64_t t, unsigned w) {
        detail::TrialState& st = state[w];
        RngStream request_rng(seed, t, lanes::kRequest);
        const double u = request_rng.uniform() * acc;
        const auto file = static_cast<int>(
            std::min<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin(), cdf.size() - 1));

        int serving = 0;
        for (int k = 1; k <= K; ++k) {
            RngStream cache_rng(seed, t, lanes::kCacheBase + static_cast<std::uint32_t>(k - 1));
            const std::vector<int> cache = sample_cache_realization(policy, content.cache_size, cache_rng);
            if (std::binary_search(cache.begin(), cache.end(), file)) {
                serving = k;
                break;
            }
        }
        if (serving == 0) {
            return;  // delivered by the macro BS: not a local success
        }
        RngStream deploy_rng(seed, t, lanes::kDeployment);
        sample_deployment_into(st.deployment, params, scheme, deploy_rng, options.interference, st.beam_ws);
        RngStream serve_rng(seed, t, lanes::kServingBase + static_cast<std::uint32_t>(serving - 1));
        const SirSample s = simulate_sir(params, st.deployment, serving, scheme, serve_rng, st.sir_ws);
        success[t] = s.sir >= params.gamma ? 1 : 0;
    });
    std::uint64_t hits = 0;
    for (auto s : success) {
        hits += s;
    }
    return ProportionEstimate::from_counts(hits, trials);
}

} // namespace mimocache::network
