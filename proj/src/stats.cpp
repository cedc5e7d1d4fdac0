//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file stats.cpp
//---------------------------------------------------------------------------//
#include "enskog/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace enskog
{
//---------------------------------------------------------------------------//
MeanEstimate mean_estimate(std::span<double const> values)
{
    MeanEstimate out;
    auto const n = values.size();
    if (n == 0)
        return out;
    double sum = 0;
    for (double v : values)
        sum += v;
    out.mean = sum / static_cast<double>(n);
    if (n < 2)
        return out;
    double ss = 0;
    for (double v : values)
        ss += (v - out.mean) * (v - out.mean);
    out.stderr_ = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    return out;
}

//---------------------------------------------------------------------------//
LinearFit linear_fit(std::span<double const> x, std::span<double const> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need at least two paired points");
    auto const n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0)
        throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (x.size() > 2)
    {
        double sse = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            double const r = y[i] - fit.intercept - fit.slope * x[i];
            sse += r * r;
        }
        fit.slope_stderr = std::sqrt(sse / (n - 2) / sxx);
    }
    return fit;
}

LinearFit loglog_fit(std::span<double const> x, std::span<double const> y)
{
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (!(x[i] > 0) || !(y[i] > 0))
            throw std::domain_error("loglog_fit: nonpositive value");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return linear_fit(lx, ly);
}

//---------------------------------------------------------------------------//
double ks_statistic(std::vector<double> sample, std::function<double(double)> const& cdf)
{
    std::sort(sample.begin(), sample.end());
    auto const n = static_cast<double>(sample.size());
    double d = 0;
    for (std::size_t i = 0; i < sample.size(); ++i)
    {
        double const f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_value(double level, std::size_t n)
{
    // Inverse of the Kolmogorov limit law tail 2 sum (-1)^(k-1) exp(-2 k^2 x^2)
    auto tail = [](double x) {
        double s = 0;
        for (int k = 1; k < 100; ++k)
        {
            double const term = std::exp(-2.0 * k * k * x * x);
            s += (k % 2 ? 2 : -2) * term;
            if (term < 1e-18)
                break;
        }
        return s;
    };
    double lo = 0.3, hi = 3.0;
    for (int it = 0; it < 100; ++it)
    {
        double const mid = 0.5 * (lo + hi);
        (tail(mid) > level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) / std::sqrt(static_cast<double>(n));
}

double chi_square_survival(double x, double dof)
{
    if (x <= 0)
        return 1;
    return boost::math::gamma_q(dof / 2, x / 2);
}

//---------------------------------------------------------------------------//
}  // namespace enskog
