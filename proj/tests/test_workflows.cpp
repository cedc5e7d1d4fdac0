//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_workflows.cpp
//---------------------------------------------------------------------------//
#include "enskog/workflows.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include <gtest/gtest.h>

#include "json.hpp"

#include "enskog/process.hpp"

using namespace enskog;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace
{
fs::path scratch(std::string const& name)
{
    auto p = fs::temp_directory_path() / ("enskog_wf_" + name);
    fs::remove_all(p);
    return p;
}

json read_json(fs::path const& p)
{
    std::ifstream in(p);
    return json::parse(in);
}

RunConfig small_config(Workflow w, fs::path const& out)
{
    RunConfig c;
    c.workflow = w;
    c.out_dir = out.string();
    c.sim.n_particles = 200;
    c.sim.t_end = 0.3;
    c.sim.dt = 0.005;
    c.coupling_seeds = 3;
    c.coupling_eps = {0.1, 0.05, 0.025};
    return c;
}
}  // namespace

//---------------------------------------------------------------------------//
TEST(Workflows, Sha256KnownVector)
{
    auto const p = scratch("abc.txt");
    {
        std::ofstream(p) << "abc";
    }
    EXPECT_EQ(sha256_file(p.string()),
              "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    fs::remove(p);
}

TEST(Workflows, DisjointPairMovesInStraightLines)
{
    auto const out = scratch("pair");
    auto c = small_config(Workflow::run, out);
    c.sim.n_particles = 2;
    c.sim.t_end = 1;
    c.sim.dt = 0.01;
    c.sim.snapshot_every = 10;
    c.sim.init.pos_scale = 50;
    c.sim.kernel.mollifier.r_beta = 0.5;

    auto const rep = orchestrate(c);
    ASSERT_EQ(rep.exit_code, exit_pass) << rep.error;

    auto const snaps = read_snapshots_csv((out / "snapshots.csv").string());
    ASSERT_GE(snaps.size(), 11u);
    auto const& s0 = snaps.front();
    ASSERT_GT(norm(s0.particles[0].r - s0.particles[1].r), 10.0);
    for (auto const& s : snaps)
    {
        for (std::size_t i = 0; i < 2; ++i)
        {
            auto const& p0 = s0.particles[i];
            EXPECT_EQ(s.particles[i].v, p0.v);
            EXPECT_LT(norm(s.particles[i].r - (p0.r + s.t * p0.v)), 1e-12);
        }
    }
    EXPECT_TRUE(read_events_csv((out / "events.csv").string()).empty());
    fs::remove_all(out);
}

TEST(Workflows, ManifestListsEveryOutputWithChecksum)
{
    auto const out = scratch("manifest");
    auto const rep = orchestrate(small_config(Workflow::run, out));
    ASSERT_EQ(rep.exit_code, exit_pass) << rep.error;

    auto const m = read_json(out / "manifest.json");
    auto const& files = m["reproducible"]["files"];
    std::set<std::string> listed;
    for (auto const& f : files)
    {
        auto const path = f["path"].get<std::string>();
        listed.insert(path);
        EXPECT_EQ(f["sha256"].get<std::string>(), sha256_file((out / path).string()));
        EXPECT_EQ(f["bytes"].get<std::uintmax_t>(), fs::file_size(out / path));
    }
    std::set<std::string> present;
    for (auto const& e : fs::directory_iterator(out))
        present.insert(e.path().filename().string());
    present.erase("manifest.json");
    EXPECT_EQ(listed, present);
    EXPECT_TRUE(listed.count("verdict.json"));
    EXPECT_EQ(m["reproducible"]["seed"].get<std::uint64_t>(), 1u);
    EXPECT_FALSE(m["reproducible"]["config"].contains("threads"));
    EXPECT_EQ(m["execution"]["threads"].get<unsigned>(), 1u);
    fs::remove_all(out);
}

TEST(Workflows, SameSeedSameChecksums)
{
    for (auto w : {Workflow::run, Workflow::coupling, Workflow::support})
    {
        auto const a = scratch("repeat_a");
        auto const b = scratch("repeat_b");
        auto ca = small_config(w, a);
        auto cb = small_config(w, b);
        cb.sim.threads = 3;
        ASSERT_NE(orchestrate(ca).exit_code, exit_runtime_error);
        ASSERT_NE(orchestrate(cb).exit_code, exit_runtime_error);
        auto const ma = read_json(a / "manifest.json");
        auto const mb = read_json(b / "manifest.json");
        EXPECT_EQ(ma["reproducible"], mb["reproducible"]) << to_string(w);
        EXPECT_FALSE(ma["reproducible"]["files"].empty());
        fs::remove_all(a);
        fs::remove_all(b);
    }
}

TEST(Workflows, LowCouplingSlopeFailsNamedCheck)
{
    auto const out = scratch("coupling");
    auto c = small_config(Workflow::coupling, out);
    // the fitted slope sits far below this threshold
    c.coupling_min_slope = 50;
    auto const rep = orchestrate(c);
    EXPECT_EQ(rep.exit_code, exit_check_failed);
    ASSERT_EQ(rep.checks.size(), 1u);
    EXPECT_EQ(rep.checks[0].name, "coupling_rate");
    EXPECT_FALSE(rep.checks[0].passed);
    EXPECT_NE(rep.checks[0].detail.find("coupling slope"), std::string::npos);

    auto const m = read_json(out / "manifest.json");
    EXPECT_EQ(m["reproducible"]["status"], "fail");
    EXPECT_EQ(m["reproducible"]["checks"][0]["name"], "coupling_rate");
    auto const v = read_json(out / "verdict.json");
    EXPECT_EQ(v["exit_code"], 1);
    fs::remove_all(out);
}

TEST(Workflows, EmptyBesovIntervalIsRuntimeError)
{
    auto const out = scratch("besov_empty");
    auto c = small_config(Workflow::besov, out);
    c.sim.kernel.cross.gamma = 1;
    c.sim.kernel.angular.nu = 0.5;
    auto const rep = orchestrate(c);
    EXPECT_EQ(rep.exit_code, exit_runtime_error);
    EXPECT_NE(rep.error.find("need c > (gamma+1)/(2 gamma+1) and c < nu"), std::string::npos);
    EXPECT_EQ(rep.warnings.size(), 1u);
    auto const m = read_json(out / "manifest.json");
    EXPECT_EQ(m["reproducible"]["exit_code"], 2);
    EXPECT_NE(m["reproducible"]["error"].get<std::string>().find("besov"), std::string::npos);
    fs::remove_all(out);
}

TEST(Workflows, BesovReportsVerdictFields)
{
    auto const out = scratch("besov");
    auto c = small_config(Workflow::besov, out);
    c.sim.kernel.angular.nu = 0.9;
    c.besov_a = 0.3;
    c.kde_resolution = 9;
    auto const rep = orchestrate(c);
    ASSERT_EQ(rep.exit_code, exit_pass) << rep.error;
    auto const v = read_json(out / "verdict.json");
    auto const& b = v["besov"];
    EXPECT_GT(b["kappa_hat"].get<double>(), 0);
    EXPECT_DOUBLE_EQ(b["a"].get<double>(), 0.3);
    EXPECT_DOUBLE_EQ(b["hol_alpha"].get<double>(), 0.1);
    EXPECT_NEAR(b["admissible_c_interval"][0].get<double>(), 2.0 / 3, 1e-15);
    EXPECT_DOUBLE_EQ(b["admissible_c_interval"][1].get<double>(), 0.9);

    std::ifstream in(out / "besov.csv");
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("phi_id,|h|,I,ratio,mc_stderr", 0), 0u);
    fs::remove_all(out);
}

TEST(Workflows, InvalidConfigIsRuntimeError)
{
    auto const out = scratch("invalid");
    auto c = small_config(Workflow::run, out);
    c.sim.kernel.angular.nu = 1.5;
    auto const rep = orchestrate(c);
    EXPECT_EQ(rep.exit_code, exit_runtime_error);
    EXPECT_NE(rep.error.find("(0,1)"), std::string::npos);
    EXPECT_TRUE(fs::exists(out / "manifest.json"));
    fs::remove_all(out);
}
