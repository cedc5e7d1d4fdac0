//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/vecgeom.hpp
 * \brief Collision geometry: tangent frames, deflection map, azimuth shift.
 */
//---------------------------------------------------------------------------//
#pragma once

#include "vec3.hpp"

namespace enskog
{
//---------------------------------------------------------------------------//
/*!
 * Two vectors spanning the plane orthogonal to a relative velocity X.
 *
 * Both have length |X| and (X/|X|, i/|X|, j/|X|) is a right-handed
 * orthonormal basis. For X = 0 both are zero.
 */
struct CollisionFrame
{
    Vec3 i_vec;
    Vec3 j_vec;
};

//! Deterministic tangent frame seeded from the smallest-magnitude axis of X
CollisionFrame build_frame(Vec3 const& x);

//! Point on the circle of radius |X| orthogonal to X: cos(phi) i + sin(phi) j
Vec3 gamma_vector(Vec3 const& x, double phi);

//! Velocity increment of particle v colliding with u
Vec3 deflection(Vec3 const& v, Vec3 const& u, double theta, double phi);

struct PostCollision
{
    Vec3 v;
    Vec3 u;
};

//! Post-collision pair (v + alpha, u - alpha)
PostCollision post_collision(Vec3 const& v, Vec3 const& u, double theta, double phi);

/*!
 * Azimuth that the partner u sees for the same collision.
 *
 * The update u - deflection(v, u, theta, phi) equals
 * u + deflection(u, v, theta, partner_azimuth(phi)) under the frame
 * convention of build_frame.
 */
double partner_azimuth(double phi);

/*!
 * Azimuth shift aligning the tangent frame of u - v with that of us - vs.
 *
 * The frame of the first pair is carried onto the second by the minimal
 * rotation taking one relative direction to the other; the returned angle is
 * where the rotated i-vector lands in the second frame, in [0, 2 pi).
 * Returns 0 if either relative velocity vanishes.
 */
double tanaka_shift(Vec3 const& v, Vec3 const& u, Vec3 const& vs, Vec3 const& us, double phi);

//! Wrap an angle into [0, 2 pi)
double wrap_angle(double phi);

//---------------------------------------------------------------------------//
}  // namespace enskog
