//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/kernel.hpp
 * \brief Angular measure, cross section, spatial mollifier and pair rates.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>

#include "particle.hpp"
#include "vec3.hpp"

namespace enskog
{
//---------------------------------------------------------------------------//
/*!
 * Power-law scattering-angle density b * theta^(-1-nu) on [theta_min, pi].
 */
struct AngularMeasure
{
    double nu{0.5};
    double b_coeff{1};
    double theta_min{1e-2};

    bool operator==(AngularMeasure const&) const = default;
};

//! Density b * theta^(-1-nu)
double angular_density(AngularMeasure const& q, double theta);

//! Mass of [lo, hi]; throws std::domain_error if lo < theta_min or hi > pi
double angular_mass(AngularMeasure const& q, double lo, double hi);

//! Mass of [theta_min, pi]
double angular_total_mass(AngularMeasure const& q);

//! Fraction of the total mass below theta
double angular_cdf(AngularMeasure const& q, double theta);

//! Inverse-CDF draw on [theta_min, pi] from a uniform in [0, 1]
double sample_theta(AngularMeasure const& q, double uniform);

//! Inverse-CDF draw restricted to [lo, hi]
double sample_theta_between(AngularMeasure const& q, double lo, double hi, double uniform);

//---------------------------------------------------------------------------//
//! Hard-potential-like rate c_sigma * (1 + z^2)^(gamma/2)
struct CrossSection
{
    double gamma{1};
    double c_sigma{1};

    bool operator==(CrossSection const&) const = default;
};

double sigma_rate(CrossSection const& cs, double z);

//---------------------------------------------------------------------------//
//! Smooth bump of radius r_beta and height amplitude
struct SpatialMollifier
{
    double r_beta{1};
    double amplitude{1};

    bool operator==(SpatialMollifier const&) const = default;
};

double beta_weight(SpatialMollifier const& m, Vec3 const& d);
Vec3 beta_gradient(SpatialMollifier const& m, Vec3 const& d);

//---------------------------------------------------------------------------//
struct CollisionKernel
{
    AngularMeasure angular;
    CrossSection cross;
    SpatialMollifier mollifier;

    bool operator==(CollisionKernel const&) const = default;
};

//! Angular mass times the azimuthal circle length, 2 pi
double collision_mass(CollisionKernel const& k);

//! Rate at which particle i is hit by partner j in an ensemble of n
double pair_rate(CollisionKernel const& k,
                 ParticleState const& pi,
                 ParticleState const& pj,
                 std::size_t n);

//---------------------------------------------------------------------------//
}  // namespace enskog
