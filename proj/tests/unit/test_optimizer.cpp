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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mimocache/analysis/stp.hpp"
#include "mimocache/analysis/tables.hpp"
#include "mimocache/network/content.hpp"
#include "mimocache/optimizer/caching.hpp"
#include "mimocache/optimizer/oracle.hpp"

namespace {

using namespace mimocache;
using namespace mimocache::optimizer;
using analysis::CoverageTable;
using analysis::Method;

CoverageTable table_of(std::vector<double> values)
{
    return {Scheme::MatchedFilter, Method::Upper, static_cast<int>(values.size()), std::move(values)};
}

struct Instance {
    ContentParams content;
    CoverageTable coverage;
};

Instance random_instance(std::mt19937_64& gen)
{
    std::uniform_int_distribution<int> files(3, 6);
    std::uniform_int_distribution<int> cluster(2, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int N = files(gen);
    const int M = std::uniform_int_distribution<int>(1, N - 1)(gen);
    const int K = cluster(gen);
    std::vector<double> cov(static_cast<std::size_t>(K));
    double level = 0.3 + 0.7 * unit(gen);
    for (double& c : cov) {
        c = level;
        level *= unit(gen);
    }
    return {network::zipf_content(N, M, 2.0 * unit(gen)), table_of(cov)};
}

void expect_feasible(const CachePolicy& b, double M)
{
    for (double x : b.b) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
    }
    EXPECT_NEAR(b.total(), M, 1e-6);
}

TEST(Residual, Endpoints)
{
    const CoverageTable t = table_of({0.6, 0.3, 0.1});
    const double p = 0.4;
    const double mu = 0.05;
    EXPECT_NEAR(stationarity_residual(0.0, p, mu, t), p * 1.0 - mu, 1e-15);
    EXPECT_NEAR(stationarity_residual(1.0, p, mu, t), p * (0.6 - 0.3) - mu, 1e-15);
    const std::vector<double> pop{0.4, 0.6};
    EXPECT_EQ(stationarity_residual(0.3, 0, mu, pop, t), stationarity_residual(0.3, p, mu, t));
}

TEST(Residual, NonincreasingInW)
{
    const CoverageTable t = table_of({0.7, 0.4, 0.35, 0.1});
    double prev = stationarity_residual(0.0, 1.0, 0.0, t);
    for (int i = 1; i <= 1000; ++i) {
        const double r = stationarity_residual(i / 1000.0, 1.0, 0.0, t);
        EXPECT_LE(r, prev + 1e-14);
        prev = r;
    }
}

TEST(Residual, RootMatchesGridScan)
{
    const CoverageTable t = table_of({0.6, 0.3});
    const double p = 0.5;
    for (double mu : {0.2, 0.25, 0.3, 0.4}) {
        const double root = file_from_dual(mu, p, t);
        double scan = 0.0;
        double best = INFINITY;
        for (int i = 0; i <= 10000; ++i) {
            const double w = i / 10000.0;
            const double r = std::abs(stationarity_residual(w, p, mu, t));
            if (r < best) {
                best = r;
                scan = w;
            }
        }
        EXPECT_NEAR(root, scan, 1e-4) << mu;
    }
}

TEST(CacheFromDual, Thresholds)
{
    const CoverageTable t = table_of({0.6, 0.3});
    const std::vector<double> p{0.5, 0.3, 0.2};
    for (double b : cache_from_dual(0.0, p, t).b) {
        EXPECT_EQ(b, 1.0);
    }
    for (double b : cache_from_dual(0.5 * 0.9, p, t).b) {
        EXPECT_EQ(b, 0.0);
    }
    EXPECT_THROW(cache_from_dual(-1.0, p, t), DomainError);
}

TEST(CacheFromDual, MonotoneInMultiplier)
{
    const CoverageTable t = table_of({0.7, 0.5, 0.2});
    const std::vector<double> p = network::zipf_popularity(10, 0.8);
    CachePolicy prev = cache_from_dual(0.0, p, t);
    const double top = p[0] * t.sum();
    for (int i = 1; i <= 100; ++i) {
        const CachePolicy cur = cache_from_dual(top * i / 100.0, p, t);
        for (std::size_t n = 0; n < p.size(); ++n) {
            EXPECT_LE(cur.b[n], prev.b[n] + 1e-12);
        }
        EXPECT_LE(cur.total(), prev.total() + 1e-12);
        prev = cur;
    }
}

TEST(Optimize, UniformPopularity)
{
    const ContentParams c = network::zipf_content(20, 5, 0.0);
    const auto r = optimize_caching(c, table_of({0.6, 0.3}));
    for (double b : r.policy.b) {
        EXPECT_NEAR(b, 0.25, 1e-9);
    }
    const auto u = uniform_policy(c);
    EXPECT_EQ(u.b.front(), 0.25);
}

TEST(Optimize, SteepPopularityMatchesMostPopular)
{
    const ContentParams c = network::zipf_content(100, 10, 10.0);
    const auto mpc = mpc_policy(c);
    // (11/10)^10 = 2.59 clears the MF split ratio (1.57) but not the ZF one
    // (2.64) at L = K = 2, so ZF keeps a small share on files 10 and 11.
    for (auto [s, tol] : {std::pair{Scheme::MatchedFilter, 1e-3}, {Scheme::ZeroForcing, 1e-2}}) {
        const auto t = analysis::analytic_table(s, Method::Upper, network::NetworkParams{});
        const auto r = optimize_caching(c, t);
        for (std::size_t n = 0; n < c.popularity.size(); ++n) {
            EXPECT_NEAR(r.policy.b[n], mpc.b[n], tol) << to_string(s) << " file " << n + 1;
        }
    }
}

TEST(Optimize, SteepPopularityThreshold)
{
    // Files n and n+1 split into cached and empty only when
    // p_n / p_{n+1} >= sum_k P^k / (P^1 - P^2).
    const CoverageTable t = table_of({0.6, 0.3});
    const ContentParams steep = network::zipf_content(100, 10, 12.0);  // (11/10)^12 = 3.14
    const auto r = optimize_caching(steep, t);
    const auto mpc = mpc_policy(steep);
    for (std::size_t n = 0; n < 100; ++n) {
        EXPECT_NEAR(r.policy.b[n], mpc.b[n], 1e-9) << n;
    }
    const ContentParams mild = network::zipf_content(100, 10, 10.0);  // (11/10)^10 = 2.59
    const auto m = optimize_caching(mild, t);
    EXPECT_GT(m.policy.b[10], 0.01);
    EXPECT_LT(m.policy.b[9], 0.99);
}

TEST(Optimize, SmallInstanceMatchesOracle)
{
    const ContentParams c = network::zipf_content(5, 2, 0.9);
    const CoverageTable t = table_of({0.6, 0.3});
    const auto r = optimize_caching(c, t);
    const auto o = brute_force_oracle(c, t);
    EXPECT_NEAR(r.stp, o.stp, 1e-4);
    EXPECT_GE(r.stp, o.stp - 1e-9);
    expect_feasible(r.policy, 2.0);
    expect_feasible(o.policy, 2.0);
}

TEST(Optimize, RandomInstances)
{
    std::mt19937_64 gen(2024);
    for (int i = 0; i < 50; ++i) {
        const Instance inst = random_instance(gen);
        const double M = inst.content.cache_size;
        const auto r = optimize_caching(inst.content, inst.coverage);
        const auto o = brute_force_oracle(inst.content, inst.coverage);
        EXPECT_NEAR(r.stp, o.stp, 1e-4) << "instance " << i;
        expect_feasible(r.policy, M);
        const double p1 = inst.content.popularity.front();
        EXPECT_LE(r.kkt.max_interior_residual, 1e-6 * p1) << i;
        EXPECT_GE(r.kkt.min_full_residual, -1e-9) << i;
        EXPECT_LE(r.kkt.max_empty_residual, 1e-9) << i;
        EXPECT_LE(r.dual.mu_l, r.dual.mu_star);
        EXPECT_LE(r.dual.mu_star, r.dual.mu_u);
        const auto& p = inst.content.popularity;
        EXPECT_GE(r.stp, analysis::stp_analytic(p, mpc_policy(inst.content), inst.coverage) - 1e-9);
        EXPECT_GE(r.stp, analysis::stp_analytic(p, uniform_policy(inst.content), inst.coverage) - 1e-9);
        for (std::size_t n = 1; n < p.size(); ++n) {
            EXPECT_LE(r.policy.b[n], r.policy.b[n - 1] + 1e-9);
        }
    }
}

TEST(Optimize, OracleStartsAgree)
{
    const ContentParams c = network::zipf_content(6, 3, 0.7);
    const auto o = brute_force_oracle(c, table_of({0.55, 0.35, 0.1}));
    ASSERT_EQ(o.start_stps.size(), 20u);
    for (double s : o.start_stps) {
        EXPECT_NEAR(s, o.stp, 1e-6);
    }
}

TEST(Optimize, LargeLibraryFeasibleAndOptimal)
{
    network::NetworkParams params;
    params.antennas = 4;
    for (double db : {-10.0, 0.0, 10.0}) {
        params.gamma = db_to_linear(db);
        for (Scheme s : {Scheme::MatchedFilter, Scheme::ZeroForcing}) {
            const auto t = analysis::analytic_table(s, Method::Upper, params);
            const ContentParams c = network::zipf_content(100, 10, 0.9);
            const auto r = optimize_caching(c, t);
            expect_feasible(r.policy, 10.0);
            EXPECT_LE(r.kkt.max_interior_residual, 1e-6 * c.popularity.front());
            EXPECT_GE(r.stp, analysis::stp_analytic(c.popularity, mpc_policy(c), t) - 1e-9);
        }
    }
}

TEST(Optimize, DegenerateBudgets)
{
    const CoverageTable t = table_of({0.6, 0.3});
    const auto all = optimize_caching(network::zipf_content(4, 4, 0.9), t);
    EXPECT_FALSE(all.note.empty());
    for (double b : all.policy.b) {
        EXPECT_EQ(b, 1.0);
    }
    EXPECT_NEAR(all.stp, 0.6, 1e-12);
    const auto none = optimize_caching(network::zipf_content(4, 0, 0.9), t);
    EXPECT_EQ(none.policy.total(), 0.0);
    EXPECT_THROW(optimize_caching(network::zipf_content(4, 2, 0.9), table_of({0.3, 0.6})), DomainError);
    EXPECT_THROW(optimize_caching(network::zipf_content(4, 2, 0.9), t, 0.0), DomainError);
}

TEST(Mpc, Examples)
{
    EXPECT_EQ(mpc_policy(ContentParams{{0.5, 0.3, 0.2}, 1}).b, (std::vector<double>{1.0, 0.0, 0.0}));
    EXPECT_EQ(mpc_policy(ContentParams{{0.5, 0.3, 0.2}, 3}).b, (std::vector<double>{1.0, 1.0, 1.0}));
    EXPECT_EQ(mpc_policy(ContentParams{{0.25, 0.25, 0.25, 0.25}, 2}).b, (std::vector<double>{1.0, 1.0, 0.0, 0.0}));
    EXPECT_EQ(mpc_policy(ContentParams{{0.2, 0.5, 0.3}, 1}).b, (std::vector<double>{0.0, 1.0, 0.0}));
}

TEST(Stp, ConcaveAlongSegments)
{
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const CoverageTable t = table_of({0.65, 0.4, 0.15});
    const ContentParams c = network::zipf_content(6, 3, 0.8);
    auto random_feasible = [&] {
        std::vector<double> v(6);
        for (double& x : v) {
            x = unit(gen);
        }
        return CachePolicy{project_box_simplex(v, 3.0)};
    };
    for (int i = 0; i < 100; ++i) {
        const CachePolicy a = random_feasible();
        const CachePolicy b = random_feasible();
        CachePolicy mid;
        for (std::size_t n = 0; n < 6; ++n) {
            mid.b.push_back(0.5 * (a.b[n] + b.b[n]));
        }
        const double fa = analysis::stp_analytic(c.popularity, a, t);
        const double fb = analysis::stp_analytic(c.popularity, b, t);
        EXPECT_GE(analysis::stp_analytic(c.popularity, mid, t), 0.5 * (fa + fb) - 1e-9);
    }
}

TEST(Projection, BoxSimplex)
{
    const std::vector<double> v{0.2, 1.7, -0.4, 0.6};
    const auto p = project_box_simplex(v, 2.0);
    double sum = 0.0;
    for (double x : p) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
        sum += x;
    }
    EXPECT_NEAR(sum, 2.0, 1e-12);
    EXPECT_EQ(p[1], 1.0);
    EXPECT_EQ(p[2], 0.0);
    const std::vector<double> inside{0.5, 0.5, 1.0};
    const auto same = project_box_simplex(inside, 2.0);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(same[i], inside[i], 1e-12);
    }
    EXPECT_THROW(project_box_simplex(v, 5.0), ConstraintViolation);
}

TEST(Oracle, Limits)
{
    EXPECT_THROW(brute_force_oracle(network::zipf_content(7, 2, 0.9), table_of({0.6, 0.3})), DimensionError);
    const auto o = brute_force_oracle(network::zipf_content(4, 2, 0.0), table_of({0.6, 0.3}));
    for (double b : o.policy.b) {
        EXPECT_NEAR(b, 0.5, 1e-3);
    }
}

} // namespace
