//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_stats.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "enskog/stats.hpp"

using namespace enskog;

TEST(Stats, MeanEstimate)
{
    std::vector<double> v{1, 2, 3, 4};
    auto m = mean_estimate(v);
    EXPECT_DOUBLE_EQ(m.mean, 2.5);
    EXPECT_NEAR(m.stderr_, std::sqrt(5.0 / 3 / 4), 1e-15);
}

TEST(Stats, LogLogSlopeOfPowerLaw)
{
    std::vector<double> x{0.1, 0.2, 0.4, 0.8}, y;
    for (double t : x)
        y.push_back(3 * std::pow(t, 1.5));
    EXPECT_NEAR(loglog_fit(x, y).slope, 1.5, 1e-12);
    EXPECT_THROW(loglog_fit(x, std::vector<double>{1, 0, 1, 1}), std::domain_error);
}

TEST(Stats, KsCriticalValue)
{
    // tabulated asymptotic constant at level 0.01
    EXPECT_NEAR(ks_critical_value(0.01, 1) , 1.6276, 1e-3);
    EXPECT_NEAR(ks_critical_value(0.05, 100), 1.3581 / 10, 1e-4);
}

TEST(Stats, ChiSquareSurvival)
{
    EXPECT_NEAR(chi_square_survival(3.841459, 1), 0.05, 1e-6);
    EXPECT_NEAR(chi_square_survival(18.307038, 10), 0.05, 1e-6);
}
