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

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "mimocache/analysis/bounds.hpp"
#include "mimocache/analysis/distance.hpp"
#include "mimocache/analysis/exact.hpp"
#include "mimocache/analysis/stp.hpp"
#include "mimocache/analysis/tables.hpp"
#include "mimocache/network/content.hpp"
#include "mimocache/network/simulator.hpp"
#include "mimocache/numerics/laplace.hpp"
#include "mimocache/numerics/special.hpp"
#include "mimocache/optimizer/caching.hpp"
#include "mimocache/optimizer/oracle.hpp"

namespace mimocache::harness {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct ValidationOptions {
    std::string level = "quick";
    std::uint64_t seed = 20260101;
    unsigned threads = 0;
    /// "nonmonotone-table" corrupts one coverage table before it is checked.
    std::string inject_fault;
};

struct ValidationReport {
    std::string level;
    std::vector<CheckResult> checks;
    nlohmann::ordered_json adjudication;

    bool passed() const
    {
        for (const auto& c : checks) {
            if (!c.passed) {
                return false;
            }
        }
        return true;
    }

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        j["level"] = level;
        j["passed"] = passed();
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : checks) {
            j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        }
        if (!adjudication.is_null()) {
            j["zf_closed_form_adjudication"] = adjudication;
        }
        return j;
    }
};

namespace detail {

// Outcome of one invariant: empty detail on success is filled in by the caller.
struct Verdict {
    bool passed;
    std::string detail;
};

inline Verdict pass(std::string detail) { return {true, std::move(detail)}; }
inline Verdict fail(std::string detail) { return {false, std::move(detail)}; }

inline const std::vector<double>& sweep_gamma_db()
{
    static const std::vector<double> g{-10.0, 0.0, 10.0, 20.0};
    return g;
}

inline network::NetworkParams reference_params(int L, int K, double gamma)
{
    network::NetworkParams p;
    p.antennas = L;
    p.cluster_size = K;
    p.gamma = gamma;
    return p;
}

} // namespace detail

/// Runs the named invariant suites. Quick stays within about a minute on one
/// core; full adds large Monte Carlo grids and the ZF closed-form verdict.
inline ValidationReport run_validation(const ValidationOptions& opts, std::ostream& log)
{
    using namespace detail;
    using analysis::BoundKind;
    using analysis::Method;
    const bool full = opts.level == "full";
    const std::uint64_t mc_trials = full ? 100000 : 10000;
    network::McOptions mc{opts.threads, network::InterferenceModel::Explicit};

    ValidationReport report;
    report.level = opts.level;
    auto run = [&](const std::string& name, const std::function<Verdict()>& body) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r{name, false, {}, 0.0};
        try {
            const Verdict v = body();
            r.passed = v.passed;
            r.detail = v.detail;
        } catch (const std::exception& e) {
            r.detail = fmt::format("exception: {}", e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        log << fmt::format("[{}] {} ({:.1f}s) {}\n", r.passed ? "pass" : "FAIL", name, r.seconds, r.detail);
        report.checks.push_back(std::move(r));
    };

    run("numerics.incomplete_beta", [] {
        const double full_beta = numerics::incomplete_beta(0.5, 0.5, 1.0);
        const double half = numerics::incomplete_beta(0.5, 0.5, 0.5);
        const double comp = numerics::incomplete_beta_complement(0.5, 0.5, 0.5);
        const double err = std::max({std::abs(full_beta - std::numbers::pi), std::abs(half - std::numbers::pi / 2),
                                     std::abs(half + comp - full_beta)});
        return err <= 1e-12 ? pass(fmt::format("max error {:.1e}", err)) : fail(fmt::format("error {:.3e}", err));
    });

    run("numerics.tail_integral_atan", [] {
        double worst = 0.0;
        for (double e = -3.0; e <= 3.0; e += 0.25) {
            const double x = std::pow(10.0, e);
            const double general = numerics::interference_tail_quadrature(x, 4.0);
            worst = std::max(worst, std::abs(general - std::atan(1.0 / x)));
        }
        return worst <= 1e-8 ? pass(fmt::format("max error {:.1e}", worst)) : fail(fmt::format("error {:.3e}", worst));
    });

    run("numerics.alzer_bracket", [] {
        for (int m = 1; m <= 4; ++m) {
            for (double z = 0.0; z <= 10.0; z += 0.05) {
                const auto b = numerics::alzer_bounds(z, m);
                const double cdf = 1.0 - numerics::gamma_ccdf(z, m);
                if (b.lower > cdf + 1e-12 || cdf > b.upper + 1e-12) {
                    return fail(fmt::format("m={} z={}: {} <= {} <= {} violated", m, z, b.lower, cdf, b.upper));
                }
            }
        }
        return pass("m = 1..4, z in [0, 10]");
    });

    run("numerics.laplace_exponential", [] {
        const double c = 0.7;
        const double s = 1.3;
        const auto d = numerics::laplace_derivatives(
            [&](double, int order) {
                std::vector<double> x(static_cast<std::size_t>(order) + 1, 0.0);
                x[0] = -c * s;
                x[1] = -c;
                return x;
            },
            s, 8);
        double worst = 0.0;
        for (int i = 0; i <= 8; ++i) {
            worst = std::max(worst, std::abs(d[static_cast<std::size_t>(i)] - std::pow(-c, i) * std::exp(-c * s)));
        }
        return worst <= 1e-14 ? pass(fmt::format("max error {:.1e}", worst)) : fail(fmt::format("{:.3e}", worst));
    });

    run("numerics.zf_orthogonality", [&] {
        double worst = 0.0;
        double norm_err = 0.0;
        for (std::uint64_t t = 0; t < 1000; ++t) {
            network::RngStream rng(opts.seed, t, 7);
            numerics::ComplexMatrix H(4, 2);
            network::draw_channels_into(H, rng);
            numerics::ComplexVector h(4);
            for (auto& z : h) {
                z = rng.complex_normal();
            }
            const auto w = numerics::zf_project(h, H);
            worst = std::max(worst, numerics::nulling_residual(H, w));
            norm_err = std::max(norm_err, std::abs(numerics::norm(w) - 1.0));
        }
        return worst <= 1e-10 && norm_err <= 1e-12
                   ? pass(fmt::format("max residual {:.1e}", worst))
                   : fail(fmt::format("residual {:.3e}, norm error {:.3e}", worst, norm_err));
    });

    run("analysis.closed_form_consistency", [] {
        double worst = 0.0;
        for (double db = -20.0; db <= 20.0; db += 5.0) {
            for (int k = 1; k <= 3; ++k) {
                const double g = db_to_linear(db);
                worst = std::max(worst, std::abs(analysis::coverage_mf_bound(k, 3, 1, g, 4.0, BoundKind::Upper) -
                                                 analysis::coverage_closed_form_mf(k, g)));
            }
        }
        return worst <= 1e-10 ? pass(fmt::format("max gap {:.1e}", worst)) : fail(fmt::format("gap {:.3e}", worst));
    });

    run("analysis.bound_ordering", [] {
        for (int L : {1, 2, 4}) {
            for (int k = 1; k <= 2; ++k) {
                for (double db : sweep_gamma_db()) {
                    const double g = db_to_linear(db);
                    const double lo = analysis::coverage_mf_bound(k, 2, L, g, 4.0, BoundKind::Lower);
                    const double up = analysis::coverage_mf_bound(k, 2, L, g, 4.0, BoundKind::Upper);
                    if (lo > up + 1e-12) {
                        return fail(fmt::format("mf L={} k={} {} dB: lower {} > upper {}", L, k, db, lo, up));
                    }
                    if (L >= 2) {
                        const double zlo = analysis::coverage_zf_bound(k, 2, L, g, 4.0, BoundKind::Lower);
                        const double zup = analysis::coverage_zf_bound(k, 2, L, g, 4.0, BoundKind::Upper);
                        if (zlo > zup + 1e-12) {
                            return fail(fmt::format("zf L={} k={} {} dB: lower {} > upper {}", L, k, db, zlo, zup));
                        }
                    }
                }
            }
        }
        return pass("mf L in {1,2,4}, zf L in {2,4}, K = 2");
    });

    run("analysis.table_monotone_in_k", [&] {
        int tables = 0;
        for (Scheme scheme : {Scheme::MatchedFilter, Scheme::ZeroForcing}) {
            for (Method method : {Method::Upper, Method::Lower, Method::Exact}) {
                for (double db : sweep_gamma_db()) {
                    auto t = analysis::analytic_table(scheme, method, reference_params(3, 3, db_to_linear(db)));
                    if (tables == 0 && opts.inject_fault == "nonmonotone-table") {
                        std::swap(t.values.front(), t.values.back());
                    }
                    ++tables;
                    const auto v = analysis::table_violations(t, 1e-12);
                    if (!v.empty()) {
                        return fail(fmt::format("{} {} at {} dB: {}", to_string(scheme), analysis::to_string(method),
                                                db, v.front()));
                    }
                }
            }
        }
        return pass(fmt::format("{} tables with L = K = 3", tables));
    });

    run("analysis.monotone_in_gamma", [] {
        for (Scheme scheme : {Scheme::MatchedFilter, Scheme::ZeroForcing}) {
            for (Method method : {Method::Upper, Method::Lower}) {
                for (int k = 1; k <= 2; ++k) {
                    double prev = 1.0;
                    for (double db = -20.0; db <= 30.0; db += 2.5) {
                        const double v =
                            analysis::analytic_coverage(scheme, method, reference_params(4, 2, db_to_linear(db)), k);
                        if (v > prev + 1e-12) {
                            return fail(fmt::format("{} {} k={} rises at {} dB", to_string(scheme),
                                                    analysis::to_string(method), k, db));
                        }
                        prev = v;
                    }
                }
            }
        }
        return pass("bounds, L = 4, K = 2, -20..30 dB");
    });

    run("analysis.mf_exact_within_bounds", [] {
        double margin = 1.0;
        for (int L : {1, 2, 4}) {
            for (int k = 1; k <= 2; ++k) {
                for (double db : sweep_gamma_db()) {
                    const double g = db_to_linear(db);
                    const double ex = analysis::coverage_mf_exact(k, 2, L, g, 4.0, 5e-5);
                    const double lo = analysis::coverage_mf_bound(k, 2, L, g, 4.0, BoundKind::Lower);
                    const double up = analysis::coverage_mf_bound(k, 2, L, g, 4.0, BoundKind::Upper);
                    if (ex < lo - 1e-9 || ex > up + 1e-9) {
                        return fail(fmt::format("L={} k={} {} dB: {} outside [{}, {}]", L, k, db, ex, lo, up));
                    }
                    margin = std::min({margin, ex - lo, up - ex});
                }
            }
        }
        return pass(fmt::format("smallest margin {:.1e}", margin));
    });

    run("analysis.zf_exact_near_bounds", [&] {
        // The bounds rest on replacing delta^2 by its mean; at k = K this is
        // exact, so quick mode checks only those points.
        std::string worst_point;
        double worst = 0.0;
        for (int L : {2, 3, 4}) {
            for (int k = full ? 1 : 2; k <= 2; ++k) {
                for (double db : sweep_gamma_db()) {
                    const double g = db_to_linear(db);
                    const double ex = analysis::coverage_zf_exact(k, 2, L, g, 4.0, 5e-5);
                    const double lo = analysis::coverage_zf_bound(k, 2, L, g, 4.0, BoundKind::Lower);
                    const double up = analysis::coverage_zf_bound(k, 2, L, g, 4.0, BoundKind::Upper);
                    const double gap = std::max({0.0, lo - ex, ex - up});
                    if (gap > worst) {
                        worst = gap;
                        worst_point = fmt::format("L={} k={} {} dB: exact {:.6f}, bracket [{:.6f}, {:.6f}]", L, k, db,
                                                  ex, lo, up);
                    }
                }
            }
        }
        const std::string detail = fmt::format("largest excursion {:.4f}{}{}", worst, worst_point.empty() ? "" : " at ",
                                               worst_point);
        return worst <= 0.02 ? pass(detail) : fail(detail);
    });

    run("analysis.delta_second_moment", [] {
        double worst = 0.0;
        for (auto [k, K] : {std::pair{1, 2}, {2, 3}, {1, 3}, {3, 5}}) {
            worst = std::max(worst, std::abs(analysis::expected_delta_squared(k, K) - static_cast<double>(k) / K));
        }
        return worst <= 1e-8 ? pass(fmt::format("max error {:.1e}", worst)) : fail(fmt::format("{:.3e}", worst));
    });

    run("analysis.intensity_invariance", [] {
        double worst = 0.0;
        const double base_mf = analysis::coverage_mf_exact(2, 2, 2, 1.0, 4.0, 5e-5);
        const double base_zf = analysis::coverage_zf_exact(1, 2, 3, 1.0, 4.0, 5e-5);
        for (double lambda : {1e-5, 1e-4}) {
            worst = std::max(worst, std::abs(analysis::coverage_mf_exact(2, 2, 2, 1.0, 4.0, lambda) - base_mf));
            worst = std::max(worst, std::abs(analysis::coverage_zf_exact(1, 2, 3, 1.0, 4.0, lambda) - base_zf));
        }
        return worst <= 1e-6 ? pass(fmt::format("max spread {:.1e}", worst)) : fail(fmt::format("{:.3e}", worst));
    });

    run("optimizer.kkt_and_budget", [&] {
        const int instances = full ? 50 : 10;
        for (int i = 0; i < instances; ++i) {
            network::RngStream rng(opts.seed, static_cast<std::uint64_t>(i), 11);
            const int N = 2 + static_cast<int>(rng.uniform() * 5.0);
            const int M = 1 + static_cast<int>(rng.uniform() * (N - 1));
            const ContentParams content = network::zipf_content(N, M, 2.0 * rng.uniform());
            const double p1 = 0.3 + 0.7 * rng.uniform();
            const analysis::CoverageTable table{Scheme::MatchedFilter, Method::Upper, 2, {p1, p1 * rng.uniform()}};
            const auto r = optimizer::optimize_caching(content, table);
            const auto o = optimizer::brute_force_oracle(content, table, 1e-3, 20, opts.seed + i);
            const auto& k = r.kkt;
            if (k.budget_gap > 1e-6 || k.max_interior_residual > 1e-6 * content.popularity.front() ||
                k.min_full_residual < -1e-9 || k.max_empty_residual > 1e-9) {
                return fail(fmt::format("instance {}: KKT certificate violated", i));
            }
            if (std::abs(r.stp - o.stp) > 1e-4) {
                return fail(fmt::format("instance {}: optimizer {} vs oracle {}", i, r.stp, o.stp));
            }
            const double mpc = analysis::stp_analytic(content.popularity, optimizer::mpc_policy(content), table);
            if (mpc > r.stp + 1e-9) {
                return fail(fmt::format("instance {}: most-popular caching beats the optimum", i));
            }
        }
        return pass(fmt::format("{} random instances agree with the oracle", instances));
    });

    run("optimizer.uniform_popularity", [] {
        const ContentParams content = network::zipf_content(7, 3, 0.0);
        const analysis::CoverageTable table{Scheme::MatchedFilter, Method::Upper, 3, {0.7, 0.4, 0.2}};
        const auto r = optimizer::optimize_caching(content, table);
        double worst = 0.0;
        for (double b : r.policy.b) {
            worst = std::max(worst, std::abs(b - 3.0 / 7.0));
        }
        return worst <= 1e-9 ? pass(fmt::format("max deviation {:.1e}", worst)) : fail(fmt::format("{:.3e}", worst));
    });

    run("network.determinism", [&] {
        const auto p = reference_params(2, 2, 1.0);
        const double g[] = {0.1, 1.0, 10.0};
        network::McOptions one = mc;
        one.workers = 1;
        network::McOptions three = mc;
        three.workers = 3;
        const auto a = network::estimate_coverage_grid_mc(p, Scheme::ZeroForcing, g, 600, opts.seed, one);
        const auto b = network::estimate_coverage_grid_mc(p, Scheme::ZeroForcing, g, 600, opts.seed, three);
        for (int k = 1; k <= 2; ++k) {
            for (std::size_t i = 0; i < 3; ++i) {
                if (a.at(k, i).successes != b.at(k, i).successes) {
                    return fail("worker count changed the estimate");
                }
            }
        }
        return pass("1 and 3 workers give identical counts");
    });

    run("network.serving_gain_moments", [&] {
        for (auto [scheme, L, K] : {std::tuple{Scheme::MatchedFilter, 2, 2}, {Scheme::ZeroForcing, 4, 2},
                                    {Scheme::ZeroForcing, 4, 3}}) {
            const auto p = reference_params(L, K, 1.0);
            const auto gains = network::sample_serving_gains(p, 1, scheme, 20000, opts.seed);
            const double m = scheme == Scheme::MatchedFilter ? L : L - K + 1;
            double mean = 0.0;
            for (double x : gains) {
                mean += x;
            }
            mean /= static_cast<double>(gains.size());
            const double se = std::sqrt(m / static_cast<double>(gains.size()));
            if (std::abs(mean - m) > 3.0 * se) {
                return fail(fmt::format("{} L={} K={}: mean {} vs {}", to_string(scheme), L, K, mean, m));
            }
        }
        return pass("Gamma(L,1) and Gamma(L-K+1,1) means within 3 sigma");
    });

    run("network.mf_single_antenna_anchor", [&] {
        const auto p = reference_params(1, 2, 1.0);
        const double g[] = {1.0};
        const auto grid = network::estimate_coverage_grid_mc(p, Scheme::MatchedFilter, g, mc_trials, opts.seed, mc);
        std::string detail;
        bool ok = true;
        for (int k = 1; k <= 2; ++k) {
            const auto& e = grid.at(k, 0);
            const double ref = analysis::coverage_closed_form_mf(k, 1.0);
            ok = ok && std::abs(e.estimate - ref) <= 3.0 * e.standard_error;
            detail += fmt::format("k={}: {:.4f} +- {:.4f} vs {:.6f}; ", k, e.estimate, e.standard_error, ref);
        }
        return Verdict{ok, detail};
    });

    run("network.zf_cluster_edge_anchor", [&] {
        const auto p = reference_params(2, 2, 1.0);
        const auto e = network::estimate_coverage_mc(p, 2, Scheme::ZeroForcing, mc_trials, opts.seed, mc);
        const double ref = analysis::coverage_closed_form_zf(2, 2, 1.0);
        const std::string detail = fmt::format("{:.4f} +- {:.4f} vs {:.6f}", e.estimate, e.standard_error, ref);
        return Verdict{std::abs(e.estimate - ref) <= 3.0 * e.standard_error, detail};
    });

    if (full) {
        run("network.mc_within_bounds", [&] {
            std::string failures;
            std::vector<double> g;
            for (double db : sweep_gamma_db()) {
                g.push_back(db_to_linear(db));
            }
            for (Scheme scheme : {Scheme::MatchedFilter, Scheme::ZeroForcing}) {
                for (int L : {1, 2, 4}) {
                    if (scheme == Scheme::ZeroForcing && L < 2) {
                        continue;
                    }
                    const auto p = reference_params(L, 2, 1.0);
                    const auto grid = network::estimate_coverage_grid_mc(p, scheme, g, mc_trials, opts.seed, mc);
                    const double slack = scheme == Scheme::ZeroForcing ? 0.02 : 0.0;
                    for (int k = 1; k <= 2; ++k) {
                        for (std::size_t i = 0; i < g.size(); ++i) {
                            const auto pp = reference_params(L, 2, g[i]);
                            const double lo = analysis::analytic_coverage(scheme, Method::Lower, pp, k);
                            const double up = analysis::analytic_coverage(scheme, Method::Upper, pp, k);
                            const auto& e = grid.at(k, i);
                            const double two = 2.0 * e.standard_error;
                            if (e.estimate < lo - two - slack || e.estimate > up + two + slack) {
                                failures += fmt::format("{} L={} k={} {} dB: {:.4f} vs [{:.4f}, {:.4f}]; ",
                                                        to_string(scheme), L, k, sweep_gamma_db()[i], e.estimate, lo,
                                                        up);
                            }
                        }
                    }
                }
            }
            return failures.empty() ? pass("every grid point inside its bracket") : fail(failures);
        });

        run("analysis.zf_closed_form_adjudication", [&] {
            const auto p = reference_params(2, 2, 1.0);
            const auto e = network::estimate_coverage_mc(p, 1, Scheme::ZeroForcing, mc_trials, opts.seed, mc);
            const double general = analysis::coverage_closed_form_zf(1, 2, 1.0);
            const double printed = analysis::coverage_closed_form_zf_printed(1, 2, 1.0);
            const bool general_ok = std::abs(e.estimate - general) <= 0.01;
            const bool printed_ok = std::abs(e.estimate - printed) <= 0.01;
            const std::string verdict = general_ok == printed_ok ? (general_ok ? "both" : "neither")
                                                                 : (general_ok ? "general" : "printed");
            report.adjudication = {{"k", 1},
                                   {"K", 2},
                                   {"L", 2},
                                   {"gamma_db", 0.0},
                                   {"general_form", general},
                                   {"printed_form", printed},
                                   {"exact_integral", analysis::coverage_zf_exact(1, 2, 2, 1.0, 4.0, 5e-5)},
                                   {"mc", e.estimate},
                                   {"mc_stderr", e.standard_error},
                                   {"trials", e.trials},
                                   {"verdict", verdict}};
            const std::string detail = fmt::format("mc {:.4f} +- {:.4f}; general {:.5f}, printed {:.5f}: {}",
                                                   e.estimate, e.standard_error, general, printed, verdict);
            return Verdict{general_ok != printed_ok, detail};
        });
    }
    return report;
}

} // namespace mimocache::harness
