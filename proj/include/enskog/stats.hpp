//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/stats.hpp
 * \brief Summary statistics and fits shared by the diagnostics.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace enskog
{
//---------------------------------------------------------------------------//
struct MeanEstimate
{
    double mean{0};
    double stderr_{0};
};

MeanEstimate mean_estimate(std::span<double const> values);

struct LinearFit
{
    double slope{0};
    double intercept{0};
    double slope_stderr{0};
};

//! Ordinary least squares y = intercept + slope * x
LinearFit linear_fit(std::span<double const> x, std::span<double const> y);

//! Least-squares slope of log(y) against log(x); nonpositive entries throw
LinearFit loglog_fit(std::span<double const> x, std::span<double const> y);

//! Kolmogorov-Smirnov distance between a sample and a continuous CDF
double ks_statistic(std::vector<double> sample, std::function<double(double)> const& cdf);

//! Asymptotic two-sided KS critical value at the given level
double ks_critical_value(double level, std::size_t n);

//! Upper tail P(X > x) of a chi-square variable with dof degrees of freedom
double chi_square_survival(double x, double dof);

//---------------------------------------------------------------------------//
}  // namespace enskog
