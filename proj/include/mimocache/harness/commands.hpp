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

#include <filesystem>
#include <fstream>
#include <ostream>
#include <vector>

#include <fmt/format.h>

#include "mimocache/analysis/stp.hpp"
#include "mimocache/analysis/tables.hpp"
#include "mimocache/harness/config.hpp"
#include "mimocache/harness/csv.hpp"
#include "mimocache/network/content.hpp"
#include "mimocache/optimizer/caching.hpp"

namespace mimocache::harness {

namespace fs = std::filesystem;

/// Creates the output directory and stores the resolved configuration.
inline fs::path prepare_output(const ExperimentConfig& cfg)
{
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    std::ofstream(dir / "config.resolved.txt", std::ios::binary) << render_config(cfg);
    return dir;
}

inline network::McOptions mc_options(const ExperimentConfig& cfg)
{
    return {cfg.threads,
            cfg.fast_interference ? network::InterferenceModel::Shortcut : network::InterferenceModel::Explicit};
}

inline std::vector<double> gammas_linear(const ExperimentConfig& cfg)
{
    std::vector<double> out;
    for (double db : cfg.gamma_db) {
        out.push_back(db_to_linear(db));
    }
    return out;
}

inline network::NetworkParams at_gamma(network::NetworkParams p, double gamma)
{
    p.gamma = gamma;
    return p;
}

inline ContentParams content_of(const ExperimentConfig& cfg, double delta)
{
    return network::zipf_content(cfg.library_size, cfg.cache_size, delta);
}

struct CoverageRow {
    Scheme scheme;
    int k;
    double gamma_db;
    network::ProportionEstimate mc;
    double exact;
    double lower;
    double upper;
};

/// MC coverage against the exact integrals and both bounds.
inline std::vector<CoverageRow> cmd_coverage(const ExperimentConfig& cfg, std::ostream& log)
{
    const fs::path dir = prepare_output(cfg);
    const std::vector<double> gammas = gammas_linear(cfg);
    std::vector<CoverageRow> rows;
    for (Scheme scheme : cfg.schemes) {
        log << fmt::format("coverage: {} with {} trials\n", to_string(scheme), cfg.trials);
        const auto grid =
            network::estimate_coverage_grid_mc(cfg.network, scheme, gammas, cfg.trials, cfg.seed, mc_options(cfg));
        for (int k = 1; k <= cfg.network.cluster_size; ++k) {
            for (std::size_t g = 0; g < gammas.size(); ++g) {
                const auto p = at_gamma(cfg.network, gammas[g]);
                rows.push_back({scheme, k, cfg.gamma_db[g], grid.at(k, g),
                                analysis::analytic_coverage(scheme, analysis::Method::Exact, p, k),
                                analysis::analytic_coverage(scheme, analysis::Method::Lower, p, k),
                                analysis::analytic_coverage(scheme, analysis::Method::Upper, p, k)});
            }
        }
    }
    CsvWriter csv(dir / "coverage.csv", {"scheme", "k", "gamma_db", "mc", "mc_stderr", "exact", "lower", "upper"});
    for (const auto& r : rows) {
        csv.row(to_string(r.scheme), r.k, r.gamma_db, r.mc.estimate, r.mc.standard_error, r.exact, r.lower, r.upper);
    }
    if (cfg.plot_script) {
        std::ofstream gp(dir / "coverage.gp", std::ios::binary);
        gp << "set datafile separator ','\n"
              "set xlabel 'SIR target (dB)'\n"
              "set ylabel 'coverage probability'\n"
              "set key outside\n"
              "plot for [s in 'mf zf'] for [k=1:"
           << cfg.network.cluster_size
           << "] 'coverage.csv' using (strcol(1) eq s && $2 == k ? $3 : 1/0):4 with points title sprintf('%s k=%d mc', s, "
              "k), \\\n"
              "     for [s in 'mf zf'] for [k=1:"
           << cfg.network.cluster_size
           << "] 'coverage.csv' using (strcol(1) eq s && $2 == k ? $3 : 1/0):6 with lines title sprintf('%s k=%d exact', s, "
              "k)\n";
    }
    return rows;
}

struct OptimizeRow {
    Scheme scheme;
    double gamma_db;
    optimizer::OptimizationResult opc;
    CachePolicy mpc;
    double stp_mpc;
    double stp_uniform;
    int files_cached;  // b_n > 0.01
};

/// Coverage table the optimizer works from.
inline analysis::CoverageTable optimizer_table(const ExperimentConfig& cfg, const network::NetworkParams& p,
                                               Scheme scheme)
{
    return analysis::analytic_table(scheme, cfg.optimizer_coverage, p);
}

inline OptimizeRow optimize_point(const ExperimentConfig& cfg, const network::NetworkParams& p, Scheme scheme,
                                  double gamma_db, const ContentParams& content)
{
    const auto table = optimizer_table(cfg, p, scheme);
    OptimizeRow row{scheme, gamma_db, optimizer::optimize_caching(content, table), optimizer::mpc_policy(content),
                    0.0, 0.0, 0};
    row.stp_mpc = analysis::stp_analytic(content.popularity, row.mpc, table);
    row.stp_uniform = analysis::stp_analytic(content.popularity, optimizer::uniform_policy(content), table);
    for (double b : row.opc.policy.b) {
        row.files_cached += b > 0.01 ? 1 : 0;
    }
    return row;
}

/// Optimal and most-popular caching for every scheme and SIR target.
inline std::vector<OptimizeRow> cmd_optimize(const ExperimentConfig& cfg, std::ostream& log)
{
    const fs::path dir = prepare_output(cfg);
    const ContentParams content = content_of(cfg, cfg.zipf_delta);
    std::vector<OptimizeRow> rows;
    for (Scheme scheme : cfg.schemes) {
        for (double db : cfg.gamma_db) {
            rows.push_back(optimize_point(cfg, at_gamma(cfg.network, db_to_linear(db)), scheme, db, content));
        }
    }
    CsvWriter summary(dir / "optimize.csv", {"scheme", "gamma_db", "mu_star", "stp_opc", "stp_mpc", "stp_uniform",
                                             "files_cached", "budget_gap", "kkt_interior_residual"});
    CsvWriter policy(dir / "policy.csv", {"scheme", "gamma_db", "file", "popularity", "b_opc", "b_mpc"});
    for (const auto& r : rows) {
        summary.row(to_string(r.scheme), r.gamma_db, r.opc.dual.mu_star, r.opc.stp, r.stp_mpc, r.stp_uniform,
                    r.files_cached, r.opc.kkt.budget_gap, r.opc.kkt.max_interior_residual);
        for (std::size_t n = 0; n < content.popularity.size(); ++n) {
            policy.row(to_string(r.scheme), r.gamma_db, n + 1, content.popularity[n], r.opc.policy.b[n], r.mpc.b[n]);
        }
        if (!r.opc.note.empty()) {
            log << fmt::format("optimize: {} at {} dB: {}\n", to_string(r.scheme), r.gamma_db, r.opc.note);
        }
    }
    log << fmt::format("optimize: {} scheme/target pairs\n", rows.size());
    return rows;
}

struct CompareRow {
    std::string sweep;
    Scheme scheme;
    int antennas;
    double delta;
    double gamma_db;
    double stp_opc;
    double stp_mpc;
};

/// STP under optimized caching across antenna counts and Zipf skewness.
inline std::vector<CompareRow> cmd_compare(const ExperimentConfig& cfg, std::ostream& log)
{
    const fs::path dir = prepare_output(cfg);
    std::vector<CompareRow> rows;
    auto add = [&](const char* sweep, network::NetworkParams p, Scheme scheme, double delta) {
        const ContentParams content = content_of(cfg, delta);
        for (double db : cfg.gamma_db) {
            const OptimizeRow r = optimize_point(cfg, at_gamma(p, db_to_linear(db)), scheme, db, content);
            rows.push_back({sweep, scheme, p.antennas, delta, db, r.opc.stp, r.stp_mpc});
        }
    };
    for (int L : cfg.sweep_antennas) {
        network::NetworkParams p = cfg.network;
        p.antennas = L;
        for (Scheme scheme : cfg.schemes) {
            if (scheme == Scheme::ZeroForcing && L < p.cluster_size) {
                log << fmt::format("compare: skipping zf at L={} < K={}\n", L, p.cluster_size);
                continue;
            }
            add("antennas", p, scheme, cfg.zipf_delta);
        }
    }
    for (double delta : cfg.sweep_delta) {
        for (Scheme scheme : cfg.schemes) {
            add("delta", cfg.network, scheme, delta);
        }
    }
    CsvWriter csv(dir / "compare.csv", {"sweep", "scheme", "antennas", "zipf_delta", "gamma_db", "stp_opc", "stp_mpc"});
    for (const auto& r : rows) {
        csv.row(r.sweep, to_string(r.scheme), r.antennas, r.delta, r.gamma_db, r.stp_opc, r.stp_mpc);
    }
    log << fmt::format("compare: {} rows\n", rows.size());
    return rows;
}

struct SimulateRow {
    Scheme scheme;
    double gamma_db;
    std::string policy;
    network::ProportionEstimate stp_mc;
    double stp_mc_coverage;  // analytic STP with the MC coverage table
    double stp_bound;        // analytic STP with the optimizer's table
};

/// End-to-end STP simulation of the optimized and most-popular policies.
inline std::vector<SimulateRow> cmd_simulate(const ExperimentConfig& cfg, std::ostream& log)
{
    const fs::path dir = prepare_output(cfg);
    const std::vector<double> gammas = gammas_linear(cfg);
    const ContentParams content = content_of(cfg, cfg.zipf_delta);
    std::vector<SimulateRow> rows;
    for (Scheme scheme : cfg.schemes) {
        log << fmt::format("simulate: {} with {} trials\n", to_string(scheme), cfg.trials);
        const auto grid =
            network::estimate_coverage_grid_mc(cfg.network, scheme, gammas, cfg.trials, cfg.seed, mc_options(cfg));
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            const auto p = at_gamma(cfg.network, gammas[g]);
            const auto table = optimizer_table(cfg, p, scheme);
            const auto mc = analysis::mc_table(grid, g);
            const CachePolicy opc = optimizer::optimize_caching(content, table).policy;
            const CachePolicy mpc = optimizer::mpc_policy(content);
            for (const auto& [name, policy] : {std::pair{"opc", opc}, std::pair{"mpc", mpc}}) {
                rows.push_back({scheme, cfg.gamma_db[g], name,
                                network::estimate_stp_mc(p, content, policy, scheme, cfg.trials, cfg.seed,
                                                         mc_options(cfg)),
                                analysis::stp_analytic(content.popularity, policy, mc),
                                analysis::stp_analytic(content.popularity, policy, table)});
            }
        }
    }
    CsvWriter csv(dir / "simulate.csv",
                  {"scheme", "gamma_db", "policy", "stp_mc", "stp_mc_stderr", "stp_mc_coverage", "stp_bound"});
    for (const auto& r : rows) {
        csv.row(to_string(r.scheme), r.gamma_db, r.policy, r.stp_mc.estimate, r.stp_mc.standard_error,
                r.stp_mc_coverage, r.stp_bound);
    }
    return rows;
}

} // namespace mimocache::harness
