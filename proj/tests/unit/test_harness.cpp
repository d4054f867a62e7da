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
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "mimocache/harness/commands.hpp"
#include "mimocache/harness/config.hpp"
#include "mimocache/harness/csv.hpp"

namespace {

using namespace mimocache;
using namespace mimocache::harness;
namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("mimocache_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

TEST(Config, DefaultsAreValid)
{
    const ExperimentConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.network.lambda_b, 5e-5);
    EXPECT_EQ(cfg.library_size, 100);
    EXPECT_EQ(cfg.cache_size, 10);
    EXPECT_EQ(cfg.zipf_delta, 0.9);
}

TEST(Config, ParsesAssignmentsAndComments)
{
    const auto cfg = parse_config("# scenario\n"
                                  "antennas = 4   # per SBS\n"
                                  "\n"
                                  "schemes = zf\n"
                                  "gamma_db = -10, 10\n"
                                  "fast_interference = true\n"
                                  "optimizer_coverage = exact\n"
                                  "antennas = 6\n");
    EXPECT_EQ(cfg.network.antennas, 6);
    ASSERT_EQ(cfg.schemes.size(), 1u);
    EXPECT_EQ(cfg.schemes[0], Scheme::ZeroForcing);
    EXPECT_EQ(cfg.gamma_db, (std::vector<double>{-10.0, 10.0}));
    EXPECT_TRUE(cfg.fast_interference);
    EXPECT_EQ(cfg.optimizer_coverage, analysis::Method::Exact);
}

TEST(Config, ErrorsNameLineAndField)
{
    try {
        parse_config("antennas = 2\nalpha = 1.5x\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_EQ(e.field(), "alpha");
    }
    try {
        parse_config("colour = red\n");
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), 1);
        EXPECT_EQ(e.field(), "colour");
    }
    EXPECT_THROW(parse_config("antennas\n"), ConfigError);
    EXPECT_THROW(parse_config("antennas =\n"), ConfigError);
    EXPECT_THROW(parse_config("schemes = mf, xx\n"), ConfigError);
    EXPECT_THROW(parse_config("fast_interference = maybe\n"), ConfigError);
    EXPECT_THROW(parse_config("level = slow\n"), ConfigError);
    EXPECT_THROW(parse_config("alpha = 2\n"), ConfigError);
    EXPECT_THROW(parse_config("antennas = 1\nschemes = zf\n"), ConfigError);
    EXPECT_THROW(parse_config("trials = 0\n"), ConfigError);
    EXPECT_THROW(parse_config("gamma_db = 0, inf\n"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST(Config, RenderRoundTrips)
{
    ExperimentConfig cfg = parse_config("antennas = 4\nzipf_delta = 1.25\ngamma_db = -7.5,0,12\nseed = 99\n");
    const std::string text = render_config(cfg);
    EXPECT_EQ(render_config(parse_config(text)), text);
    EXPECT_NE(text.find("zipf_delta = 1.25\n"), std::string::npos);
    EXPECT_NE(text.find("gamma_db = -7.5,0,12\n"), std::string::npos);
}

TEST(Units, DecibelRoundTrip)
{
    for (double db = -60.0; db <= 60.0; db += 0.5) {
        EXPECT_NEAR(linear_to_db(db_to_linear(db)), db, 1e-12);
    }
    EXPECT_EQ(db_to_linear(0.0), 1.0);
    EXPECT_NEAR(db_to_linear(10.0), 10.0, 1e-14);
}

TEST(Csv, FixedFormatting)
{
    EXPECT_EQ(format_cell(0.1), "0.1");
    EXPECT_EQ(format_cell(1.0 / 3.0), "0.3333333333");
    EXPECT_EQ(format_cell(std::size_t{7}), "7");
    EXPECT_EQ(format_cell("mf"), "mf");
    const fs::path dir = scratch_dir("csv");
    fs::create_directories(dir);
    {
        CsvWriter csv(dir / "t.csv", {"a", "b"});
        csv.row(1, 2.5);
        EXPECT_THROW(csv.row(1), DimensionError);
    }
    EXPECT_EQ(slurp(dir / "t.csv"), "a,b\n1,2.5\n");
}

ExperimentConfig small_config(const std::string& name)
{
    ExperimentConfig cfg;
    cfg.output_dir = scratch_dir(name).string();
    cfg.trials = 20000;
    cfg.fast_interference = true;
    return cfg;
}

TEST(Commands, CoverageRows)
{
    ExperimentConfig cfg = small_config("coverage");
    cfg.gamma_db = {-60.0, 0.0};
    cfg.plot_script = true;
    std::ostringstream log;
    const auto rows = cmd_coverage(cfg, log);
    ASSERT_EQ(rows.size(), 8u);
    for (const auto& r : rows) {
        EXPECT_LE(r.lower, r.upper + 1e-15);
        if (r.gamma_db == -60.0) {
            EXPECT_GE(r.exact, 0.999);
            EXPECT_GE(r.mc.estimate, r.exact - 4.0 * r.mc.standard_error);
            EXPECT_GE(r.lower, 0.999);
        }
        if (r.scheme == Scheme::ZeroForcing && r.k == 2 && r.gamma_db == 0.0) {
            EXPECT_NEAR(r.mc.estimate, 0.3137, 0.01);
            EXPECT_EQ(r.lower, r.upper);
        }
    }
    const fs::path dir(cfg.output_dir);
    EXPECT_TRUE(fs::exists(dir / "coverage.csv"));
    EXPECT_TRUE(fs::exists(dir / "coverage.gp"));
    EXPECT_EQ(slurp(dir / "config.resolved.txt"), render_config(cfg));
    EXPECT_EQ(slurp(dir / "coverage.csv").rfind("scheme,k,gamma_db,mc,mc_stderr,exact,lower,upper\n", 0), 0u);
}

TEST(Commands, CsvByteStableAcrossWorkers)
{
    ExperimentConfig a = small_config("stable_a");
    a.trials = 2000;
    a.fast_interference = false;
    a.gamma_db = {-5.0, 5.0};
    a.threads = 1;
    ExperimentConfig b = a;
    b.output_dir = scratch_dir("stable_b").string();
    b.threads = 3;
    std::ostringstream log;
    cmd_coverage(a, log);
    cmd_coverage(b, log);
    EXPECT_EQ(slurp(fs::path(a.output_dir) / "coverage.csv"), slurp(fs::path(b.output_dir) / "coverage.csv"));
}

TEST(Commands, OptimizeLowTargetSpreadsCache)
{
    ExperimentConfig cfg = small_config("optimize");
    cfg.network.antennas = 4;
    cfg.gamma_db = {-10.0};
    std::ostringstream log;
    const auto rows = cmd_optimize(cfg, log);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
        EXPECT_GT(r.files_cached, cfg.cache_size);
        EXPECT_GE(r.opc.stp, r.stp_mpc - 1e-9);
        EXPECT_LE(r.opc.kkt.budget_gap, 1e-6);
    }
    const fs::path dir(cfg.output_dir);
    EXPECT_TRUE(fs::exists(dir / "optimize.csv"));
    EXPECT_TRUE(fs::exists(dir / "policy.csv"));
}

TEST(Commands, OptimizeUniformPopularityIsFlat)
{
    ExperimentConfig cfg = small_config("optimize_flat");
    cfg.zipf_delta = 0.0;
    cfg.gamma_db = {0.0};
    std::ostringstream log;
    for (const auto& r : cmd_optimize(cfg, log)) {
        for (double b : r.opc.policy.b) {
            EXPECT_NEAR(b, 0.1, 1e-9);
        }
    }
}

TEST(Commands, OptimizeFullCacheNotesTrivialPolicy)
{
    ExperimentConfig cfg = small_config("optimize_full");
    cfg.library_size = 5;
    cfg.cache_size = 5;
    cfg.gamma_db = {0.0};
    std::ostringstream log;
    cmd_optimize(cfg, log);
    EXPECT_NE(log.str().find("caching every file"), std::string::npos);
}

TEST(Commands, CompareSweeps)
{
    ExperimentConfig cfg = small_config("compare");
    cfg.sweep_antennas = {1, 4};
    cfg.sweep_delta = {0.3, 0.9, 1.5};
    cfg.gamma_db = {0.0, 10.0};
    std::ostringstream log;
    const auto rows = cmd_compare(cfg, log);
    // L=1: mf only; L=4: both; delta sweep: both schemes.
    EXPECT_EQ(rows.size(), (1 + 2 + 3 * 2) * 2u);
    EXPECT_NE(log.str().find("skipping zf at L=1"), std::string::npos);
    for (Scheme s : {Scheme::MatchedFilter, Scheme::ZeroForcing}) {
        for (double db : cfg.gamma_db) {
            double prev = 0.0;
            for (const auto& r : rows) {
                if (r.sweep == "delta" && r.scheme == s && r.gamma_db == db) {
                    EXPECT_GE(r.stp_opc, prev);
                    prev = r.stp_opc;
                }
            }
        }
    }
}

TEST(Commands, SimulateAgreesWithAnalytic)
{
    ExperimentConfig cfg = small_config("simulate");
    cfg.gamma_db = {0.0};
    cfg.schemes = {Scheme::MatchedFilter};
    std::ostringstream log;
    const auto rows = cmd_simulate(cfg, log);
    ASSERT_EQ(rows.size(), 2u);
    for (const auto& r : rows) {
        EXPECT_NEAR(r.stp_mc.estimate, r.stp_mc_coverage, 5.0 * r.stp_mc.standard_error) << r.policy;
    }
    EXPECT_TRUE(fs::exists(fs::path(cfg.output_dir) / "simulate.csv"));
}

} // namespace
