//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/particle.hpp
 */
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <vector>

#include "vec3.hpp"

namespace enskog
{
//---------------------------------------------------------------------------//
struct ParticleState
{
    Vec3 r;
    Vec3 v;
};

//---------------------------------------------------------------------------//
/*!
 * Equally weighted particle ensemble at a common time.
 */
struct Ensemble
{
    std::vector<ParticleState> particles;
    double t{0};

    std::size_t size() const { return particles.size(); }
    double weight() const { return 1.0 / static_cast<double>(particles.size()); }
};

//---------------------------------------------------------------------------//
}  // namespace enskog
