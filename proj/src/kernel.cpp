//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file kernel.cpp
//---------------------------------------------------------------------------//
#include "enskog/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace enskog
{
namespace
{
constexpr double pi = std::numbers::pi;
}

//---------------------------------------------------------------------------//
double angular_density(AngularMeasure const& q, double theta)
{
    return q.b_coeff * std::pow(theta, -1 - q.nu);
}

double angular_mass(AngularMeasure const& q, double lo, double hi)
{
    if (lo < q.theta_min)
    {
        throw std::domain_error("angular_mass: lower limit " + std::to_string(lo)
                                + " below theta_min " + std::to_string(q.theta_min));
    }
    if (hi > pi || hi < lo)
    {
        throw std::domain_error("angular_mass: invalid upper limit " + std::to_string(hi));
    }
    return q.b_coeff * (std::pow(lo, -q.nu) - std::pow(hi, -q.nu)) / q.nu;
}

double angular_total_mass(AngularMeasure const& q)
{
    return angular_mass(q, q.theta_min, pi);
}

double angular_cdf(AngularMeasure const& q, double theta)
{
    if (theta <= q.theta_min)
        return 0;
    if (theta >= pi)
        return 1;
    return angular_mass(q, q.theta_min, theta) / angular_total_mass(q);
}

double sample_theta(AngularMeasure const& q, double uniform)
{
    return sample_theta_between(q, q.theta_min, pi, uniform);
}

double sample_theta_between(AngularMeasure const& q, double lo, double hi, double uniform)
{
    double const top = std::pow(lo, -q.nu);
    double const span = top - std::pow(hi, -q.nu);
    double const theta = std::pow(top - uniform * span, -1 / q.nu);
    return std::clamp(theta, lo, hi);
}

//---------------------------------------------------------------------------//
double sigma_rate(CrossSection const& cs, double z)
{
    return cs.c_sigma * std::pow(1 + z * z, cs.gamma / 2);
}

//---------------------------------------------------------------------------//
double beta_weight(SpatialMollifier const& m, Vec3 const& d)
{
    double const s = norm2(d) / (m.r_beta * m.r_beta);
    if (s >= 1)
        return 0;
    return m.amplitude * std::exp(1 - 1 / (1 - s));
}

Vec3 beta_gradient(SpatialMollifier const& m, Vec3 const& d)
{
    double const r2 = m.r_beta * m.r_beta;
    double const s = norm2(d) / r2;
    if (s >= 1)
        return {};
    double const w = m.amplitude * std::exp(1 - 1 / (1 - s));
    return (-w / ((1 - s) * (1 - s)) * 2 / r2) * d;
}

//---------------------------------------------------------------------------//
double collision_mass(CollisionKernel const& k)
{
    return angular_total_mass(k.angular) * 2 * pi;
}

double pair_rate(CollisionKernel const& k,
                 ParticleState const& pi_,
                 ParticleState const& pj,
                 std::size_t n)
{
    double const beta = beta_weight(k.mollifier, pi_.r - pj.r);
    if (beta == 0)
        return 0;
    return beta * sigma_rate(k.cross, norm(pi_.v - pj.v)) * collision_mass(k)
           / static_cast<double>(n);
}

//---------------------------------------------------------------------------//
}  // namespace enskog
