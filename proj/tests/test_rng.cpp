//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_rng.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "enskog/rng.hpp"
#include "enskog/stats.hpp"

using namespace enskog;

TEST(Philox, KnownAnswers)
{
    auto a = philox4x32_10({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(a, (PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
    auto b = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                           {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(b, (PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
    auto c = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                           {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(c, (PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(CounterRng, ReproducibleAndIndependent)
{
    CounterRng a(42, StreamPurpose::collision, 7), b(42, StreamPurpose::collision, 7);
    CounterRng c(42, StreamPurpose::collision, 8), d(43, StreamPurpose::collision, 7);
    int same_c = 0, same_d = 0;
    for (int i = 0; i < 1000; ++i)
    {
        auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        same_c += (x == c.next_u64());
        same_d += (x == d.next_u64());
    }
    EXPECT_EQ(same_c, 0);
    EXPECT_EQ(same_d, 0);
}

TEST(CounterRng, UniformMoments)
{
    CounterRng r(1, StreamPurpose::sampling, 0);
    std::vector<double> u(200000);
    for (auto& x : u)
        x = r.uniform();
    EXPECT_LT(ks_statistic(u, [](double x) { return x; }), ks_critical_value(0.01, u.size()));
}

TEST(CounterRng, NormalMoments)
{
    CounterRng r(2, StreamPurpose::sampling, 0);
    std::vector<double> x(200000);
    for (auto& v : x)
        v = r.normal();
    auto cdf = [](double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); };
    EXPECT_LT(ks_statistic(x, cdf), ks_critical_value(0.01, x.size()));
}

TEST(CounterRng, IndexRange)
{
    CounterRng r(3, StreamPurpose::sampling, 0);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i)
        ++counts[r.index(7)];
    for (int c : counts)
        EXPECT_NEAR(c, 10000, 500);
}
