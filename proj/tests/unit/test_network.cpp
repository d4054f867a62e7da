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
#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "mimocache/analysis/bounds.hpp"
#include "mimocache/analysis/distance.hpp"
#include "mimocache/analysis/stp.hpp"
#include "mimocache/analysis/tables.hpp"
#include "mimocache/network/content.hpp"
#include "mimocache/network/simulator.hpp"

namespace {

using namespace mimocache;
using namespace mimocache::network;

McOptions shortcut(unsigned workers = 0) { return {workers, InterferenceModel::Shortcut}; }

NetworkParams params_with(int L, int K, double gamma_db)
{
    NetworkParams p;
    p.antennas = L;
    p.cluster_size = K;
    p.gamma = db_to_linear(gamma_db);
    return p;
}

TEST(Ppp, MeanCount)
{
    const NetworkParams p;
    constexpr int draws = 2000;
    double sum = 0.0;
    for (int t = 0; t < draws; ++t) {
        RngStream rng(3, static_cast<std::uint64_t>(t));
        sum += static_cast<double>(sample_ppp(p, rng).size());
    }
    const double mean = sum / draws;
    EXPECT_NEAR(mean, 800.0, 4.0 * std::sqrt(800.0 / draws));
}

TEST(Ppp, VoidProbability)
{
    NetworkParams p;
    p.region_half_width = 100.0;
    p.guard_radius = 50.0;
    constexpr double radius = 50.0;
    constexpr int draws = 100000;
    int empty = 0;
    for (int t = 0; t < draws; ++t) {
        RngStream rng(4, static_cast<std::uint64_t>(t));
        const auto pts = sample_ppp(p, rng);
        empty += std::none_of(pts.begin(), pts.end(),
                              [](const Point& q) { return q.x * q.x + q.y * q.y < radius * radius; })
                     ? 1
                     : 0;
    }
    const double expected = std::exp(-p.lambda_b * std::numbers::pi * radius * radius);
    const double sigma = std::sqrt(expected * (1.0 - expected) / draws);
    EXPECT_NEAR(expected, 0.675, 5e-4);
    EXPECT_NEAR(static_cast<double>(empty) / draws, expected, 3.0 * sigma);
}

TEST(Ppp, PointsInsideWindow)
{
    NetworkParams p;
    RngStream rng(8, 0);
    for (const auto& q : sample_ppp(p, rng)) {
        EXPECT_LE(std::abs(q.x), p.region_half_width);
        EXPECT_LE(std::abs(q.y), p.region_half_width);
    }
}

TEST(Channels, Moments)
{
    RngStream rng(11, 0);
    const auto h = draw_channels(20000, 4, rng);
    double power = 0.0;
    std::complex<double> mean = 0.0;
    std::complex<double> pseudo = 0.0;
    double count = 0.0;
    for (const auto& v : h) {
        for (const auto& z : v) {
            power += std::norm(z);
            mean += z;
            pseudo += z * z;
            count += 1.0;
        }
    }
    const double tol = 5.0 / std::sqrt(count);
    EXPECT_NEAR(power / count, 1.0, 2.0 * tol);
    EXPECT_NEAR(std::abs(mean / count), 0.0, tol);
    EXPECT_NEAR(std::abs(pseudo / count), 0.0, tol);
    EXPECT_THROW(draw_channels(0, 2, rng), DomainError);
}

TEST(Rng, ReplayAndLanes)
{
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a(), b());
    }
    RngStream c(42, 7, 1);
    RngStream d(42, 7);
    EXPECT_NE(c(), d());
    RngStream e = RngStream(42, 7).lane(1);
    RngStream f(42, 7, 1);
    EXPECT_EQ(e(), f());
    RngStream u(1, 1);
    for (int i = 0; i < 10000; ++i) {
        const double x = u.uniform();
        ASSERT_GT(x, 0.0);
        ASSERT_LT(x, 1.0);
    }
}

TEST(Deployment, SortedAndConsistent)
{
    const NetworkParams p = params_with(2, 2, 0.0);
    RngStream rng(5, 1);
    const Deployment dep = sample_deployment(p, Scheme::ZeroForcing, rng);
    ASSERT_GE(dep.size(), 2u);
    EXPECT_TRUE(std::is_sorted(dep.sorted_distances.begin(), dep.sorted_distances.end()));
    EXPECT_LE(dep.sorted_distances[1], p.guard_radius);
    EXPECT_EQ(dep.channels.rows(), dep.size());
    for (std::size_t i = 0; i < dep.size(); ++i) {
        EXPECT_NEAR(dep.path_loss[i], std::pow(dep.sorted_distances[i], -4.0), 1e-12 * dep.path_loss[i]);
        EXPECT_NEAR(numerics::norm(dep.beamformers.row(i)), 1.0, 1e-12);
    }
}

TEST(Deployment, ShortcutDrawsClusterChannelsOnly)
{
    const NetworkParams p = params_with(2, 2, 0.0);
    RngStream rng(5, 2);
    const Deployment dep = sample_deployment(p, Scheme::MatchedFilter, rng, InterferenceModel::Shortcut);
    EXPECT_EQ(dep.channels.rows(), 2u);
    EXPECT_EQ(dep.beamformers.rows(), 0u);
    EXPECT_EQ(dep.effective_gains.size(), dep.size());
}

TEST(Deployment, KthNearestDistanceLaw)
{
    // One-sample Kolmogorov-Smirnov test against the k-th nearest CDF.
    const NetworkParams p = params_with(2, 3, 0.0);
    constexpr int n = 4000;
    std::vector<std::vector<double>> samples(3);
    Deployment dep;
    BeamformerWorkspace ws;
    for (int t = 0; t < n; ++t) {
        RngStream rng(21, static_cast<std::uint64_t>(t));
        sample_deployment_into(dep, p, Scheme::MatchedFilter, rng, InterferenceModel::Shortcut, ws);
        for (int k = 0; k < 3; ++k) {
            samples[static_cast<std::size_t>(k)].push_back(dep.sorted_distances[static_cast<std::size_t>(k)]);
        }
    }
    const double critical = 1.63 / std::sqrt(static_cast<double>(n));  // 1% level
    for (int k = 1; k <= 3; ++k) {
        auto& s = samples[static_cast<std::size_t>(k - 1)];
        std::sort(s.begin(), s.end());
        double d = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double F = analysis::kth_nearest_cdf(s[i], k, p.lambda_b);
            d = std::max({d, std::abs(F - static_cast<double>(i) / n), std::abs(F - static_cast<double>(i + 1) / n)});
        }
        EXPECT_LT(d, critical) << "k=" << k;
    }
}

TEST(ServingGain, Moments)
{
    constexpr std::uint64_t n = 40000;
    for (auto [scheme, L, K, shape] : {std::tuple{Scheme::MatchedFilter, 1, 2, 1}, {Scheme::MatchedFilter, 4, 2, 4},
                                       {Scheme::ZeroForcing, 2, 2, 1}, {Scheme::ZeroForcing, 4, 2, 3},
                                       {Scheme::ZeroForcing, 4, 4, 1}}) {
        const NetworkParams p = params_with(L, K, 0.0);
        std::vector<double> residuals;
        const auto g = sample_serving_gains(p, 1, scheme, n, 9, &residuals);
        double mean = 0.0;
        double second = 0.0;
        for (double x : g) {
            mean += x;
            second += x * x;
        }
        mean /= n;
        second /= n;
        const double var = second - mean * mean;
        EXPECT_NEAR(mean, shape, 4.0 * std::sqrt(shape / static_cast<double>(n))) << L << " " << K;
        EXPECT_NEAR(var, shape, 0.05 * shape + 0.02) << L << " " << K;
        EXPECT_LE(*std::max_element(residuals.begin(), residuals.end()), 1e-12);
    }
}

TEST(ServingGain, InterfererGainIsUnitExponential)
{
    // Explicit beamformers of other SBSs give Exp(1) gains toward the user.
    for (Scheme scheme : {Scheme::MatchedFilter, Scheme::ZeroForcing}) {
        const NetworkParams p = params_with(4, 2, 0.0);
        double sum = 0.0;
        double sq = 0.0;
        double count = 0.0;
        for (int t = 0; t < 40; ++t) {
            RngStream rng(31, static_cast<std::uint64_t>(t));
            const Deployment dep = sample_deployment(p, scheme, rng);
            for (double g : dep.effective_gains) {
                sum += g;
                sq += g * g;
                count += 1.0;
            }
        }
        EXPECT_NEAR(sum / count, 1.0, 4.0 / std::sqrt(count));
        EXPECT_NEAR(sq / count, 2.0, 0.1);
    }
}

TEST(Simulator, RejectsBadRank)
{
    const NetworkParams p = params_with(2, 2, 0.0);
    RngStream rng(1, 1);
    const Deployment dep = sample_deployment(p, Scheme::MatchedFilter, rng);
    EXPECT_THROW(simulate_sir(p, dep, 0, Scheme::MatchedFilter, rng), DomainError);
    EXPECT_THROW(simulate_sir(p, dep, 3, Scheme::MatchedFilter, rng), DomainError);
    EXPECT_THROW(estimate_coverage_mc(params_with(1, 2, 0.0), 1, Scheme::ZeroForcing, 10, 1), DomainError);
    EXPECT_THROW(estimate_coverage_mc(p, 1, Scheme::MatchedFilter, 0, 1), DomainError);
}

TEST(Simulator, ZeroForcingNullsClusterInterference)
{
    const NetworkParams p = params_with(3, 3, 0.0);
    RngStream rng(2, 1);
    const Deployment dep = sample_deployment(p, Scheme::ZeroForcing, rng);
    const SirSample s = simulate_sir(p, dep, 2, Scheme::ZeroForcing, rng);
    double beyond = 0.0;
    for (std::size_t j = 3; j < dep.size(); ++j) {
        beyond += dep.effective_gains[j] * dep.path_loss[j];
    }
    EXPECT_NEAR(s.interference_power, beyond, 1e-12 * beyond);
    EXPECT_LE(s.nulling_residual, 1e-12);
    EXPECT_NEAR(s.sir, s.signal_power / s.interference_power, 1e-12 * s.sir);
}

TEST(Coverage, SingleAntennaMatchedFilterAnchor)
{
    const NetworkParams p = params_with(1, 2, 0.0);
    constexpr std::uint64_t n = 40000;
    const double gammas[] = {1.0};
    const auto grid = estimate_coverage_grid_mc(p, Scheme::MatchedFilter, gammas, n, 101, shortcut());
    for (int k = 1; k <= 2; ++k) {
        const auto& e = grid.at(k, 0);
        const double truth = analysis::coverage_closed_form_mf(k, 1.0);
        EXPECT_NEAR(e.estimate, truth, 4.0 * e.standard_error) << "k=" << k;
    }
    EXPECT_NEAR(analysis::coverage_closed_form_mf(1, 1.0), 0.560099, 5e-6);
    EXPECT_NEAR(analysis::coverage_closed_form_mf(2, 1.0), 0.067323, 5e-6);
}

TEST(Coverage, ZeroForcingClusterEdgeAnchor)
{
    const NetworkParams p = params_with(2, 2, 0.0);
    const auto e = estimate_coverage_mc(p, 2, Scheme::ZeroForcing, 40000, 102, shortcut());
    EXPECT_NEAR(e.estimate, 0.313711, 4.0 * e.standard_error);
}

TEST(Coverage, VeryLowTargetIsNearlyCertain)
{
    const NetworkParams p = params_with(2, 2, -60.0);
    for (Scheme scheme : {Scheme::MatchedFilter, Scheme::ZeroForcing}) {
        for (int k = 1; k <= 2; ++k) {
            const double exact = analysis::analytic_coverage(scheme, analysis::Method::Exact, p, k);
            const auto e = estimate_coverage_mc(p, k, scheme, 4000, 103, shortcut());
            EXPECT_GE(exact, 0.999);
            EXPECT_NEAR(e.estimate, exact, 4.0 * e.standard_error) << to_string(scheme) << " k=" << k;
        }
    }
}

TEST(Coverage, MonotoneInRankAndTarget)
{
    const NetworkParams p = params_with(3, 3, 0.0);
    const std::vector<double> gammas{db_to_linear(-5.0), 1.0, db_to_linear(5.0)};
    for (Scheme scheme : {Scheme::MatchedFilter, Scheme::ZeroForcing}) {
        const auto grid = estimate_coverage_grid_mc(p, scheme, gammas, 5000, 104, shortcut());
        for (int k = 1; k <= 3; ++k) {
            for (std::size_t g = 0; g < gammas.size(); ++g) {
                // Shared trials make these orderings hold sample by sample.
                if (g > 0) {
                    EXPECT_LE(grid.at(k, g).successes, grid.at(k, g - 1).successes);
                }
                if (scheme == Scheme::MatchedFilter && k > 1) {
                    EXPECT_LE(grid.at(k, g).estimate, grid.at(k - 1, g).estimate + 0.03);
                }
            }
        }
    }
}

TEST(Coverage, DeterministicAcrossWorkers)
{
    const NetworkParams p = params_with(2, 2, 0.0);
    const double gammas[] = {0.5, 1.0, 2.0};
    for (Scheme scheme : {Scheme::MatchedFilter, Scheme::ZeroForcing}) {
        const auto a = estimate_coverage_grid_mc(p, scheme, gammas, 300, 7, {1, InterferenceModel::Explicit});
        const auto b = estimate_coverage_grid_mc(p, scheme, gammas, 300, 7, {3, InterferenceModel::Explicit});
        for (int k = 1; k <= 2; ++k) {
            for (std::size_t g = 0; g < 3; ++g) {
                EXPECT_EQ(a.at(k, g).successes, b.at(k, g).successes);
            }
        }
        // A single-rank run reproduces that rank of the grid.
        NetworkParams q = p;
        q.gamma = 1.0;
        EXPECT_EQ(estimate_coverage_mc(q, 2, scheme, 300, 7, {2, InterferenceModel::Explicit}).successes,
                  a.at(2, 1).successes);
    }
}

TEST(Proportion, AgrestiCoull)
{
    const auto zero = ProportionEstimate::from_counts(0, 100);
    EXPECT_EQ(zero.estimate, 0.0);
    EXPECT_GT(zero.standard_error, 0.0);
    const auto half = ProportionEstimate::from_counts(50, 100);
    EXPECT_NEAR(half.standard_error, std::sqrt(0.25 / 104.0), 1e-15);
}

TEST(Content, Zipf)
{
    const auto p = zipf_popularity(3, 1.0);
    EXPECT_NEAR(p[0], 6.0 / 11.0, 1e-15);
    EXPECT_NEAR(p[1], 3.0 / 11.0, 1e-15);
    EXPECT_NEAR(p[2], 2.0 / 11.0, 1e-15);
    const auto u = zipf_popularity(4, 0.0);
    for (double v : u) {
        EXPECT_DOUBLE_EQ(v, 0.25);
    }
    const auto big = zipf_popularity(1000, 0.9);
    double sum = 0.0;
    for (double v : big) {
        sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-14);
    EXPECT_TRUE(std::is_sorted(big.rbegin(), big.rend()));
    EXPECT_THROW(zipf_popularity(0, 1.0), DomainError);
    EXPECT_THROW(zipf_popularity(3, -0.1), DomainError);
}

TEST(Content, CacheRealizationMarginals)
{
    const CachePolicy policy{{1.0, 0.7, 0.55, 0.5, 0.25, 0.0}};  // sums to 3
    constexpr int M = 3;
    constexpr int n = 40000;
    std::vector<double> freq(policy.size(), 0.0);
    for (int t = 0; t < n; ++t) {
        RngStream rng(55, static_cast<std::uint64_t>(t));
        const auto cache = sample_cache_realization(policy, M, rng);
        ASSERT_LE(cache.size(), static_cast<std::size_t>(M));
        ASSERT_EQ(std::set<int>(cache.begin(), cache.end()).size(), cache.size());
        for (int f : cache) {
            freq[static_cast<std::size_t>(f)] += 1.0;
        }
    }
    for (std::size_t i = 0; i < policy.size(); ++i) {
        const double b = policy.b[i];
        EXPECT_NEAR(freq[i] / n, b, 4.0 * std::sqrt(b * (1.0 - b) / n) + 1e-12) << i;
    }
    RngStream rng(1, 1);
    EXPECT_THROW(sample_cache_realization(CachePolicy{{1.0, 1.0}}, 1, rng), ConstraintViolation);
    EXPECT_THROW(sample_cache_realization(CachePolicy{{1.2}}, 2, rng), ConstraintViolation);
}

TEST(Stp, MonteCarloMatchesAnalytic)
{
    const NetworkParams p = params_with(2, 2, 0.0);
    const ContentParams content = zipf_content(8, 2, 0.9);
    const CachePolicy policy{{1.0, 0.5, 0.2, 0.1, 0.1, 0.05, 0.05, 0.0}};
    const auto table = analysis::analytic_table(Scheme::MatchedFilter, analysis::Method::Exact, p);
    const auto e = estimate_stp_mc(p, content, policy, Scheme::MatchedFilter, 40000, 77, shortcut());
    EXPECT_NEAR(e.estimate, analysis::stp_analytic(content.popularity, policy, table), 4.0 * e.standard_error);
}

TEST(Stp, EdgePolicies)
{
    const NetworkParams p = params_with(2, 2, 0.0);
    const ContentParams content = zipf_content(4, 4, 0.9);
    const auto none = estimate_stp_mc(p, content, CachePolicy{{0.0, 0.0, 0.0, 0.0}}, Scheme::ZeroForcing, 500, 1,
                                      shortcut());
    EXPECT_EQ(none.successes, 0u);
    // Caching everything makes the nearest SBS serve every request.
    const CachePolicy all{{1.0, 1.0, 1.0, 1.0}};
    const auto full = estimate_stp_mc(p, content, all, Scheme::ZeroForcing, 3000, 2, shortcut());
    const auto cov = estimate_coverage_mc(p, 1, Scheme::ZeroForcing, 3000, 2, shortcut());
    EXPECT_EQ(full.successes, cov.successes);
    EXPECT_THROW(estimate_stp_mc(p, content, CachePolicy{{1.0, 1.0}}, Scheme::ZeroForcing, 10, 1), DimensionError);
    EXPECT_THROW(estimate_stp_mc(p, zipf_content(4, 1, 0.9), all, Scheme::ZeroForcing, 10, 1), ConstraintViolation);
}

} // namespace
