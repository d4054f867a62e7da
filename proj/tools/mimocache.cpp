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
// Command-line front end: coverage, optimize, compare, simulate, validate.
// Exit codes: 0 success, 1 validation failure, 2 configuration error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mimocache/harness/commands.hpp"
#include "mimocache/harness/config.hpp"
#include "mimocache/harness/validate.hpp"

namespace {

using namespace mimocache;
using namespace mimocache::harness;

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> threads;
    std::string scheme;
    std::string out;
    std::string gamma_db;
    std::string level;
    std::string inject_fault;
    bool fast = false;
};

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config_path, "key = value configuration file");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
    cmd->add_option("--scheme", o.scheme, "mf or zf (default: both)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--gamma-db", o.gamma_db, "comma-separated SIR targets in dB");
    cmd->add_flag("--fast", o.fast, "sample interferer gains directly");
}

ExperimentConfig resolve(const Overrides& o)
{
    ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        cfg = load_config(o.config_path);
    }
    if (o.seed) {
        cfg.seed = *o.seed;
    }
    if (o.trials) {
        cfg.trials = *o.trials;
    }
    if (o.threads) {
        cfg.threads = *o.threads;
    }
    if (!o.scheme.empty()) {
        apply_setting(cfg, "schemes", o.scheme);
    }
    if (!o.out.empty()) {
        cfg.output_dir = o.out;
    }
    if (!o.gamma_db.empty()) {
        apply_setting(cfg, "gamma_db", o.gamma_db);
    }
    if (!o.level.empty()) {
        apply_setting(cfg, "level", o.level);
    }
    if (o.fast) {
        cfg.fast_interference = true;
    }
    cfg.validate();
    return cfg;
}

int run_validate(const ExperimentConfig& cfg, const std::string& fault)
{
    ValidationOptions opts;
    opts.level = cfg.level;
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;
    opts.inject_fault = fault;
    const ValidationReport report = run_validation(opts, std::cerr);
    const auto dir = prepare_output(cfg);
    const std::string json = report.to_json().dump(2);
    std::ofstream(dir / "validate.json", std::ios::binary) << json << '\n';
    std::cout << json << '\n';
    return report.passed() ? EXIT_SUCCESS : kExitValidation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Probabilistic caching in multi-antenna small-cell networks"};
    app.require_subcommand(1);
    Overrides o;
    auto* coverage = app.add_subcommand("coverage", "Monte Carlo vs exact and bounded coverage");
    auto* optimize = app.add_subcommand("optimize", "optimal vs most-popular caching policies");
    auto* compare = app.add_subcommand("compare", "STP across antenna counts and Zipf skewness");
    auto* simulate = app.add_subcommand("simulate", "end-to-end STP simulation of cached delivery");
    auto* validate = app.add_subcommand("validate", "run the invariant suites");
    for (auto* cmd : {coverage, optimize, compare, simulate, validate}) {
        add_common(cmd, o);
    }
    validate->add_option("--level", o.level, "quick or full");
    validate->add_option("--inject-fault", o.inject_fault, "corrupt an input to exercise a check")
        ->check(CLI::IsMember({"nonmonotone-table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const ExperimentConfig cfg = resolve(o);
        if (*validate) {
            return run_validate(cfg, o.inject_fault);
        }
        if (*coverage) {
            cmd_coverage(cfg, std::cerr);
        } else if (*optimize) {
            cmd_optimize(cfg, std::cerr);
        } else if (*compare) {
            cmd_compare(cfg, std::cerr);
        } else if (*simulate) {
            cmd_simulate(cfg, std::cerr);
        }
        std::cerr << "results written to " << cfg.output_dir << '\n';
        return EXIT_SUCCESS;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
}
