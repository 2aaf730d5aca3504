// Copyright 2026 The tomocert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tomocert/cli/commands.hpp"
#include "tomocert/cli/digest.hpp"
#include "tomocert/cli/report.hpp"
#include "tomocert/serialize.hpp"

using namespace tomocert;
using namespace tomocert::cli;
namespace fs = std::filesystem;

namespace {

class Workspace : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tomocert_cli_" + std::to_string(::getpid()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    void write_counts(const std::string &name, const CountData &data) const {
        std::ofstream out(path(name));
        save_counts(out, data);
    }
    void write_model(const std::string &name, const MeasurementModel &model) const {
        std::ofstream out(path(name));
        save_model(out, model);
    }

    int tool(const std::string &args) const {
        const std::string cmd = std::string(TOMOCERT_TOOL) + " " + args + " > " + path("stdout.txt") + " 2> " +
                                path("stderr.txt");
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    }

    fs::path dir_;
};

CountData simulate(const std::string &state, int n, std::int64_t shots, const std::string &err, std::uint64_t seed) {
    SimulateConfig c;
    c.state = state;
    c.qubits = n;
    c.shots = shots;
    c.errors = {err};
    c.seed = seed;
    return run_simulate(c);
}

}  // namespace

TEST(Digest, KnownVectors) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
    EXPECT_EQ(digest_string("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(Report, RecomputeAndVerdict) {
    Report r;
    r.alpha = 1e-3;
    ReportRecord wp{"wp", -0.2, std::exp(-8.0), {{"N_s", 100}, {"alpha", 1e-3}, {"C_w2", 1.0}}, {}, {}};
    ReportRecord lrt{"lrt", 11.3403, 0.5, {{"N_s", 150}, {"alpha", 1e-3}, {"Delta", 12}}, {}, {}};
    ReportRecord boot{"lrt_bootstrap", 2 * std::log(2.0), 0.5, {{"N_s", 150}, {"alpha", 1e-3}, {"Delta_prime", 2.0}}, {}, {}};
    EXPECT_NEAR(recompute_p_value(wp), std::exp(-8.0), 1e-15);
    EXPECT_NEAR(recompute_p_value(lrt), 0.5, 1e-5);
    EXPECT_NEAR(recompute_p_value(boot), 0.5, 1e-12);
    r.records = {lrt, boot};
    EXPECT_FALSE(r.significant());
    EXPECT_EQ(r.verdict(), "no significant systematic error");
    r.records.push_back(wp);
    EXPECT_TRUE(r.significant());
    EXPECT_EQ(r.verdict(), "systematic error significant");

    const Report back = report_from_json(to_json(r));
    EXPECT_EQ(to_json(back).dump(), to_json(r).dump());
    const std::string table = format_table(r);
    EXPECT_NE(table.find("lrt_bootstrap"), std::string::npos);
    EXPECT_NE(table.find("p-bound"), std::string::npos);

    const Report merged = merge_reports({r, r}, 1e-5);
    EXPECT_EQ(merged.records.size(), 6u);
    EXPECT_FALSE(merged.significant());
}

TEST_F(Workspace, CrosstalkDetectedEndToEnd) {
    write_counts("c.json", simulate("ghz", 3, 750, "crosstalk:0.2", 42));
    write_model("m.json", build_pauli_scheme(3));
    CertifyConfig cfg;
    cfg.counts_path = path("c.json");
    cfg.model_path = path("m.json");
    cfg.tests = {"wp", "lrt"};
    cfg.seed = 1;
    const Report r = run_certify(cfg);
    ASSERT_EQ(r.records.size(), 2u);
    EXPECT_EQ(r.records[0].test, "wp");
    EXPECT_EQ(r.records[1].test, "lrt");
    EXPECT_LT(r.records[1].p_value_bound, 1e-3);
    EXPECT_TRUE(r.significant());
    for (const auto &rec : r.records) {
        EXPECT_NEAR(recompute_p_value(rec), rec.p_value_bound, 1e-15 + 1e-12 * rec.p_value_bound);
        EXPECT_EQ(rec.provenance.at("counts_digest"), file_digest(cfg.counts_path));
        EXPECT_EQ(rec.provenance.at("software"), kSoftwareVersion);
    }
    // regression constant for the fixed generator and solver
    EXPECT_NEAR(r.records[1].statistic, 397.266, 1e-3);
    EXPECT_NEAR(r.records[1].p_value_bound / 7.53651e-30, 1.0, 1e-4);
    // byte-for-byte reproducible
    EXPECT_EQ(to_json(run_certify(cfg)).dump(), to_json(r).dump());
}

TEST_F(Workspace, NullBellRun) {
    write_counts("c.json", simulate("bell_psi_minus", 2, 150, "none", 7));
    write_model("m.json", build_pauli_scheme(2));
    CertifyConfig cfg;
    cfg.counts_path = path("c.json");
    cfg.model_path = path("m.json");
    cfg.tests = {"wp", "wl", "lrt", "bootstrap"};
    cfg.bootstrap_samples = 200;
    const Report r = run_certify(cfg);
    ASSERT_EQ(r.records.size(), 4u);
    for (const auto &rec : r.records) {
        EXPECT_GT(rec.p_value_bound, 0.01) << rec.test;
        EXPECT_NEAR(recompute_p_value(rec), rec.p_value_bound, 1e-15 + 1e-12 * rec.p_value_bound);
    }
    EXPECT_FALSE(r.significant());
    // witness statistics use the evaluation half
    EXPECT_EQ(r.records[0].parameters.at("N_s"), 75);
}

TEST_F(Workspace, OddShotsNeedFlag) {
    write_counts("c.json", simulate("ghz", 2, 151, "none", 1));
    write_model("m.json", build_pauli_scheme(2));
    CertifyConfig cfg;
    cfg.counts_path = path("c.json");
    cfg.model_path = path("m.json");
    cfg.tests = {"wp"};
    EXPECT_THROW(run_certify(cfg), InputError);
    cfg.drop_odd_shot = true;
    const Report r = run_certify(cfg);
    EXPECT_EQ(r.records[0].parameters.at("N_s"), 75);
}

TEST_F(Workspace, ToolExitCodes) {
    write_counts("null.json", simulate("bell_psi_minus", 2, 150, "none", 3));
    write_counts("xt.json", simulate("ghz", 3, 750, "crosstalk:0.2", 4));
    {
        std::ofstream(path("bad.json")) << "{\"format\": \"tomocert-counts/1\", \"qubits\": ";
    }
    ASSERT_EQ(tool("model build --qubits 2 --out " + path("m2.json")), 0);
    ASSERT_EQ(tool("model build --qubits 3 --out " + path("m3.json")), 0);
    EXPECT_EQ(tool("certify lrt --counts " + path("null.json") + " --model " + path("m2.json")), 0);
    EXPECT_EQ(tool("certify lrt --counts " + path("xt.json") + " --model " + path("m3.json")), 1);
    EXPECT_EQ(tool("certify lrt --counts " + path("bad.json") + " --model " + path("m2.json")), 2);
    EXPECT_NE(read_file(path("stderr.txt")).find("parse error"), std::string::npos);
    EXPECT_EQ(tool("certify lrt --counts " + path("xt.json") + " --model " + path("m2.json")), 2);
    EXPECT_EQ(tool("certify lrt --model " + path("m2.json")), 2);
    EXPECT_EQ(tool("simulate --state nope --qubits 2 --shots 10"), 2);
    EXPECT_EQ(tool("--help"), 0);
}

TEST_F(Workspace, ToolConfigFileAndOverrides) {
    ASSERT_EQ(tool("model build --qubits 2 --out " + path("m2.json")), 0);
    ASSERT_EQ(tool("simulate --state w --qubits 2 --shots 150 --seed 5 --out " + path("c.json")), 0);
    {
        std::ofstream(path("cfg.json")) << "{\"counts\": \"" << path("c.json") << "\", \"model\": \""
                                        << path("m2.json") << "\", \"alpha\": 0.999999}";
    }
    // alpha from the file makes any p-value significant; the flag wins
    EXPECT_EQ(tool("certify lrt --config " + path("cfg.json")), 1);
    EXPECT_EQ(tool("certify lrt --config " + path("cfg.json") + " --alpha 1e-9"), 0);
    {
        std::ofstream(path("bad_cfg.json")) << "{\"unknown_flag\": 1}";
    }
    EXPECT_EQ(tool("certify lrt --config " + path("bad_cfg.json")), 2);
}

TEST_F(Workspace, ToolOverfittingGuard) {
    ASSERT_EQ(tool("model build --qubits 2 --out " + path("m2.json")), 0);
    ASSERT_EQ(tool("simulate --state ghz --qubits 2 --shots 150 --seed 1 --out " + path("c.json")), 0);
    ASSERT_EQ(tool("certify witness --type wp --counts " + path("c.json") + " --model " + path("m2.json") +
                   " --save-witness " + path("w")),
              0);
    ASSERT_TRUE(fs::exists(path("w.wp.json")));
    EXPECT_EQ(tool("certify witness --counts " + path("c.json") + " --model " + path("m2.json") + " --witness " +
                   path("w.wp.json")),
              2);
    EXPECT_NE(read_file(path("stderr.txt")).find("--i-understand-overfitting"), std::string::npos);
    EXPECT_EQ(tool("certify witness --counts " + path("c.json") + " --model " + path("m2.json") + " --witness " +
                   path("w.wp.json") + " --i-understand-overfitting"),
              0);
    ASSERT_EQ(tool("simulate --state ghz --qubits 2 --shots 150 --seed 2 --out " + path("fresh.json")), 0);
    EXPECT_EQ(tool("certify witness --counts " + path("fresh.json") + " --model " + path("m2.json") +
                   " --witness " + path("w.wp.json")),
              0);
}

TEST_F(Workspace, ToolReportMerge) {
    ASSERT_EQ(tool("model build --qubits 2 --out " + path("m2.json")), 0);
    ASSERT_EQ(tool("simulate --state w --qubits 2 --shots 150 --out " + path("c.json")), 0);
    ASSERT_EQ(tool("certify lrt --counts " + path("c.json") + " --model " + path("m2.json") + " --out " +
                   path("r1.json")),
              0);
    ASSERT_EQ(tool("certify witness --counts " + path("c.json") + " --model " + path("m2.json") + " --out " +
                   path("r2.json")),
              0);
    EXPECT_EQ(tool("report merge " + path("r1.json") + " " + path("r2.json") + " --out " + path("all.json")), 0);
    const Report merged = report_from_json(nlohmann::json::parse(read_file(path("all.json"))));
    EXPECT_EQ(merged.records.size(), 3u);
    // identical inputs give identical bytes
    ASSERT_EQ(tool("certify lrt --counts " + path("c.json") + " --model " + path("m2.json") + " --out " +
                   path("r1b.json")),
              0);
    EXPECT_EQ(read_file(path("r1.json")), read_file(path("r1b.json")));
}

TEST(Survival, SingleReplicateStep) {
    SurvivalConfig c;
    c.replicates = 1;
    c.seed = 3;
    const SurvivalCurve s = compute_survival(c);
    ASSERT_EQ(s.t.size(), 200u);
    EXPECT_EQ(s.t.front(), 0.0);
    EXPECT_NEAR(s.t.back(), s.lambdas[0] + 5.0, 1e-12);
    EXPECT_EQ(s.wilks.front(), 1.0);
    for (size_t i = 0; i < s.t.size(); ++i) {
        EXPECT_EQ(s.empirical[i], s.t[i] <= s.lambdas[0] ? 1.0 : 0.0);
    }
    std::ostringstream csv;
    write_survival_csv(csv, s);
    EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "t,empirical_fraction_lambda_ge_t,wilks_Q");
    c.replicates = 0;
    EXPECT_THROW(compute_survival(c), InputError);
}
