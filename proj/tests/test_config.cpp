//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_config.cpp
//---------------------------------------------------------------------------//
#include "enskog/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

using namespace enskog;

namespace
{
std::vector<std::string> violations_of(std::string const& text)
{
    try
    {
        parse_config(text, "cfg");
    }
    catch (ConfigError const& e)
    {
        return e.violations();
    }
    return {};
}

bool any_contains(std::vector<std::string> const& v, std::string const& needle)
{
    return std::any_of(v.begin(), v.end(),
                       [&](auto const& s) { return s.find(needle) != std::string::npos; });
}
}  // namespace

//---------------------------------------------------------------------------//
TEST(Config, MinimalFileFillsDefaults)
{
    auto const loaded = parse_config("# only a seed\nseed = 7\n");
    RunConfig expected;
    expected.sim.seed = 7;
    EXPECT_EQ(loaded.config, expected);
    EXPECT_TRUE(loaded.warnings.empty());
    EXPECT_TRUE(validate(RunConfig{}).empty());
}

TEST(Config, NuOutOfRangeNamesKeyAndInterval)
{
    auto const v = violations_of("nu = 1.2\n");
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("nu"), std::string::npos);
    EXPECT_NE(v[0].find("(0,1)"), std::string::npos);
}

TEST(Config, ReportsEveryViolation)
{
    auto const v = violations_of("nu = 1.2\ngamma = 2.5\nhol_alpha = 0.4\nbesov_a = 0.3\n"
                                 "charfn_eps = 3\n");
    EXPECT_TRUE(any_contains(v, "nu = 1.2"));
    EXPECT_TRUE(any_contains(v, "gamma = 2.5"));
    EXPECT_TRUE(any_contains(v, "(0,2)"));
    EXPECT_TRUE(any_contains(v, "hol_alpha < a < 1"));
    EXPECT_TRUE(any_contains(v, "0 < eps < t"));
    EXPECT_EQ(v.size(), 4u);
}

TEST(Config, ParseErrorsCarryLineNumbers)
{
    auto const v = violations_of("seed = 3\n\nbogus = 1\ndt = fast\nno equals sign\nseed = 4\n");
    EXPECT_TRUE(any_contains(v, "cfg:3: unknown key 'bogus'"));
    EXPECT_TRUE(any_contains(v, "cfg:4: dt: expected a number"));
    EXPECT_TRUE(any_contains(v, "cfg:5: expected 'key = value'"));
    EXPECT_TRUE(any_contains(v, "cfg:6: duplicate key 'seed'"));
}

TEST(Config, WindowsMustBeWholeSteps)
{
    auto const v = violations_of("workflow = coupling\ndt = 0.01\n");
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("eps = 0.025 is not a multiple of dt = 0.01"), std::string::npos);
    EXPECT_TRUE(violations_of("workflow = run\ndt = 0.01\n").empty());
}

TEST(Config, EmptyCIntervalWarnsForBesov)
{
    auto const loaded = parse_config("workflow = besov\ngamma = 1\nnu = 0.5\n");
    ASSERT_EQ(loaded.warnings.size(), 1u);
    EXPECT_NE(loaded.warnings[0].find("c > (gamma+1)/(2 gamma+1) and c < nu"),
              std::string::npos);
    EXPECT_NE(loaded.warnings[0].find("(0.666667, 0.5)"), std::string::npos);

    EXPECT_TRUE(parse_config("workflow = run\ngamma = 1\nnu = 0.5\n").warnings.empty());
    EXPECT_TRUE(parse_config("workflow = besov\ngamma = 1\nnu = 0.9\n").warnings.empty());
}

TEST(Config, RoundTrip)
{
    RunConfig c;
    c.workflow = Workflow::charfn;
    c.out_dir = "some dir/x";
    c.sim.seed = 18446744073709551615ull;
    c.sim.threads = 3;
    c.sim.n_particles = 12345;
    c.sim.dt = 0.05 / 3;
    c.sim.scheme = Scheme::one_sided;
    c.sim.kernel.angular.nu = 0.3;
    c.sim.kernel.cross.gamma = 0.1 + 0.2;
    c.sim.init.kind = InitKind::two_cluster;
    c.sim.init.vel_offset = {1e-300, -2.5, 3};
    c.sim.snapshot_times = {0.25, 0.5};
    c.sim.record_rejected_from = 0.75;
    c.sim.record_events = false;
    c.checkpoints = {};
    c.observables = {"moments"};
    c.test_bank = {"v_bump", "one"};
    c.coupling_eps = {0.3, 0.15};
    c.charfn_kappa = {1.5};
    c.besov_a = 0.4;

    auto const text = serialize(c);
    auto const back = parse_config(text).config;
    EXPECT_EQ(back, c);
    EXPECT_EQ(serialize(back), text);

    RunConfig d;
    EXPECT_EQ(parse_config(serialize(d)).config, d);
    auto const outcome = config_entries(d, true);
    EXPECT_EQ(outcome.size() + 2, config_entries(d).size());
    for (auto const& [k, v] : outcome)
    {
        EXPECT_NE(k, "threads");
        EXPECT_NE(k, "out_dir");
    }
}

TEST(Config, LoadFromFile)
{
    auto const path = std::filesystem::temp_directory_path() / "enskog_test_config.cfg";
    {
        std::ofstream out(path);
        out << "workflow = support\nn_particles = 64  # small\nvel_offset = 1, 0, 0\n";
    }
    auto const c = load_config(path.string()).config;
    EXPECT_EQ(c.workflow, Workflow::support);
    EXPECT_EQ(c.sim.n_particles, 64u);
    EXPECT_EQ(c.sim.init.vel_offset, (Vec3{1, 0, 0}));
    std::filesystem::remove(path);

    EXPECT_THROW(load_config("/nonexistent/enskog.cfg"), ConfigError);
}
