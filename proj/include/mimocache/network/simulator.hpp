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
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "mimocache/network/deployment.hpp"
#include "mimocache/network/parallel.hpp"

namespace mimocache::network {

/// Lanes of a trial's random stream. Each sub-task draws from its own lane so
/// that, e.g., estimating a single rank reproduces that rank of a full grid.
namespace lanes {
inline constexpr std::uint32_t kDeployment = 0;
inline constexpr std::uint32_t kServingBase = 1;  // + (k - 1)
inline constexpr std::uint32_t kRequest = 1000;
inline constexpr std::uint32_t kCacheBase = 2000;  // + (k - 1)
} // namespace lanes

struct SirSample {
    double signal_power = 0.0;
    double interference_power = 0.0;
    double sir = 0.0;
    int serving_rank = 1;
    /// Effective gain |h_k^H w_k|^2 of the serving link.
    double signal_gain = 0.0;
    /// ||H^H w_k|| over the co-cluster users (ZF only, else 0).
    double nulling_residual = 0.0;
};

struct SirWorkspace {
    ComplexMatrix co_cluster;
    ComplexVector serving_beamformer;
};

/// SIR of the typical user served by its k-th nearest SBS (k is 1-based).
/// MF: every other SBS interferes. ZF: the serving SBS nulls K-1 co-cluster
/// users (fresh i.i.d. channels from `rng`) and only ranks beyond K interfere.
inline SirSample simulate_sir(const NetworkParams& params, const Deployment& dep, int k, Scheme scheme, RngStream& rng,
                              SirWorkspace& ws)
{
    const int K = params.cluster_size;
    if (k < 1 || k > K) {
        throw DomainError("simulate_sir: serving rank must lie in 1..K");
    }
    if (dep.size() < static_cast<std::size_t>(K) || dep.channels.rows() < static_cast<std::size_t>(K)) {
        throw DomainError("simulate_sir: deployment holds fewer than K SBSs");
    }
    const auto L = static_cast<std::size_t>(params.antennas);
    const auto serving = static_cast<std::size_t>(k - 1);
    const auto h = dep.channels.row(serving);

    SirSample out;
    out.serving_rank = k;
    if (scheme == Scheme::MatchedFilter) {
        out.signal_gain = numerics::squared_norm(h);
        double interference = 0.0;
        for (std::size_t j = 0; j < dep.size(); ++j) {
            if (j != serving) {
                interference += dep.effective_gains[j] * dep.path_loss[j];
            }
        }
        out.interference_power = interference;
    } else {
        if (params.antennas < K) {
            throw DomainError("simulate_sir: zero forcing needs antennas >= cluster size");
        }
        ws.co_cluster.resize(L, static_cast<std::size_t>(K - 1));
        ws.serving_beamformer.resize(L);
        for (int attempt = 0;; ++attempt) {
            draw_channels_into(ws.co_cluster, rng);
            try {
                numerics::zf_project_into(h, ws.co_cluster, ws.serving_beamformer);
                break;
            } catch (const RankDeficientError&) {
                if (attempt > 64) {
                    throw;
                }
            }
        }
        out.signal_gain = std::norm(numerics::inner(h, ws.serving_beamformer));
        out.nulling_residual = numerics::nulling_residual(ws.co_cluster, ws.serving_beamformer);
        double interference = 0.0;
        for (std::size_t j = static_cast<std::size_t>(K); j < dep.size(); ++j) {
            interference += dep.effective_gains[j] * dep.path_loss[j];
        }
        out.interference_power = interference;
    }
    out.signal_power = out.signal_gain * dep.path_loss[serving];
    out.sir = out.interference_power > 0.0 ? out.signal_power / out.interference_power
                                           : std::numeric_limits<double>::infinity();
    return out;
}

inline SirSample simulate_sir(const NetworkParams& params, const Deployment& dep, int k, Scheme scheme, RngStream& rng)
{
    SirWorkspace ws;
    return simulate_sir(params, dep, k, scheme, rng, ws);
}

struct McOptions {
    unsigned workers = 0;  // 0: one per hardware thread
    InterferenceModel interference = InterferenceModel::Explicit;
};

/// Binomial proportion. The standard error uses the Agresti-Coull adjusted
/// proportion (x + 2) / (n + 4), which stays positive when x = 0 or x = n.
struct ProportionEstimate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double standard_error = 0.0;

    static ProportionEstimate from_counts(std::uint64_t successes, std::uint64_t trials)
    {
        ProportionEstimate p;
        p.successes = successes;
        p.trials = trials;
        if (trials == 0) {
            return p;
        }
        const double n = static_cast<double>(trials);
        p.estimate = static_cast<double>(successes) / n;
        const double adjusted = (static_cast<double>(successes) + 2.0) / (n + 4.0);
        p.standard_error = std::sqrt(adjusted * (1.0 - adjusted) / (n + 4.0));
        return p;
    }
};

/// Empirical coverage for every serving rank 1..K and every SIR target, all
/// from the same trials.
struct CoverageGrid {
    Scheme scheme = Scheme::MatchedFilter;
    std::vector<double> gammas;
    /// by_rank[k-1][g]
    std::vector<std::vector<ProportionEstimate>> by_rank;
    double max_nulling_residual = 0.0;

    const ProportionEstimate& at(int k, std::size_t gamma_index) const
    {
        return by_rank.at(static_cast<std::size_t>(k - 1)).at(gamma_index);
    }
};

namespace detail {

struct TrialState {
    Deployment deployment;
    BeamformerWorkspace beam_ws;
    SirWorkspace sir_ws;
};

// Per-trial SIR of the requested ranks, laid out [trial][rank slot].
inline std::vector<double> simulate_rank_sirs(const NetworkParams& params, Scheme scheme, std::span<const int> ranks,
                                              std::uint64_t trials, std::uint64_t seed, const McOptions& options,
                                              double& max_residual)
{
    params.validate(scheme);
    const unsigned workers = resolve_workers(options.workers);
    std::vector<TrialState> state(workers);
    std::vector<double> worker_residual(workers, 0.0);
    std::vector<double> sirs(trials * ranks.size());
    for_each_trial(trials, workers, [&](std::uint64_t t, unsigned w) {
        TrialState& st = state[w];
        RngStream deploy_rng(seed, t, lanes::kDeployment);
        sample_deployment_into(st.deployment, params, scheme, deploy_rng, options.interference, st.beam_ws);
        for (std::size_t slot = 0; slot < ranks.size(); ++slot) {
            const int k = ranks[slot];
            RngStream serve_rng(seed, t, lanes::kServingBase + static_cast<std::uint32_t>(k - 1));
            const SirSample s = simulate_sir(params, st.deployment, k, scheme, serve_rng, st.sir_ws);
            sirs[t * ranks.size() + slot] = s.sir;
            worker_residual[w] = std::max(worker_residual[w], s.nulling_residual);
        }
    });
    max_residual = *std::max_element(worker_residual.begin(), worker_residual.end());
    return sirs;
}

} // namespace detail

inline CoverageGrid estimate_coverage_grid_mc(const NetworkParams& params, Scheme scheme, std::span<const double> gammas,
                                              std::uint64_t trials, std::uint64_t seed, const McOptions& options = {})
{
    if (trials < 1) {
        throw DomainError("estimate_coverage_mc: need at least one trial");
    }
    const int K = params.cluster_size;
    std::vector<int> ranks(static_cast<std::size_t>(K));
    std::iota(ranks.begin(), ranks.end(), 1);

    CoverageGrid grid;
    grid.scheme = scheme;
    grid.gammas.assign(gammas.begin(), gammas.end());
    const std::vector<double> sirs =
        detail::simulate_rank_sirs(params, scheme, ranks, trials, seed, options, grid.max_nulling_residual);
    grid.by_rank.assign(ranks.size(), {});
    for (std::size_t slot = 0; slot < ranks.size(); ++slot) {
        for (double gamma : gammas) {
            std::uint64_t hits = 0;
            for (std::uint64_t t = 0; t < trials; ++t) {
                hits += sirs[t * ranks.size() + slot] >= gamma ? 1 : 0;
            }
            grid.by_rank[slot].push_back(ProportionEstimate::from_counts(hits, trials));
        }
    }
    return grid;
}

/// Fraction of trials with SIR >= params.gamma when served by rank k.
inline ProportionEstimate estimate_coverage_mc(const NetworkParams& params, int k, Scheme scheme, std::uint64_t trials,
                                               std::uint64_t seed, const McOptions& options = {})
{
    if (trials < 1) {
        throw DomainError("estimate_coverage_mc: need at least one trial");
    }
    if (k < 1 || k > params.cluster_size) {
        throw DomainError("estimate_coverage_mc: serving rank must lie in 1..K");
    }
    const int rank[] = {k};
    double residual = 0.0;
    const std::vector<double> sirs = detail::simulate_rank_sirs(params, scheme, rank, trials, seed, options, residual);
    std::uint64_t hits = 0;
    for (double s : sirs) {
        hits += s >= params.gamma ? 1 : 0;
    }
    return ProportionEstimate::from_counts(hits, trials);
}

/// Serving-link effective gains |h_k^H w_k|^2 over `trials` independent
/// draws, for distribution checks.
inline std::vector<double> sample_serving_gains(const NetworkParams& params, int k, Scheme scheme,
                                                std::uint64_t trials, std::uint64_t seed,
                                                std::vector<double>* nulling_residuals = nullptr)
{
    params.validate(scheme);
    const auto L = static_cast<std::size_t>(params.antennas);
    const auto K = static_cast<std::size_t>(params.cluster_size);
    Deployment dep;
    dep.sorted_distances.assign(K, 1.0);
    dep.path_loss.assign(K, 1.0);
    dep.effective_gains.assign(K, 0.0);
    dep.channels.resize(K, L);
    std::vector<double> gains(trials);
    if (nulling_residuals) {
        nulling_residuals->assign(trials, 0.0);
    }
    SirWorkspace ws;
    for (std::uint64_t t = 0; t < trials; ++t) {
        RngStream rng(seed, t);
        draw_channels_into(dep.channels, rng);
        const SirSample s = simulate_sir(params, dep, k, scheme, rng, ws);
        gains[t] = s.signal_gain;
        if (nulling_residuals) {
            (*nulling_residuals)[t] = s.nulling_residual;
        }
    }
    return gains;
}

} // namespace mimocache::network
