//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file vecgeom.cpp
//---------------------------------------------------------------------------//
#include "enskog/vecgeom.hpp"

#include <numbers>

namespace enskog
{
//---------------------------------------------------------------------------//
CollisionFrame build_frame(Vec3 const& x)
{
    double const len = norm(x);
    if (len == 0)
    {
        return {};
    }
    Vec3 const n = x / len;

    int axis = 0;
    for (int k = 1; k < 3; ++k)
    {
        if (std::fabs(n[k]) < std::fabs(n[axis]))
        {
            axis = k;
        }
    }
    Vec3 seed{};
    seed[axis] = 1;
    Vec3 e = seed - n[axis] * n;
    e = e / norm(e);

    CollisionFrame frame;
    frame.i_vec = len * e;
    frame.j_vec = cross(n, frame.i_vec);
    return frame;
}

//---------------------------------------------------------------------------//
Vec3 gamma_vector(Vec3 const& x, double phi)
{
    auto const frame = build_frame(x);
    return std::cos(phi) * frame.i_vec + std::sin(phi) * frame.j_vec;
}

//---------------------------------------------------------------------------//
Vec3 deflection(Vec3 const& v, Vec3 const& u, double theta, double phi)
{
    Vec3 const rel = u - v;
    double const half = std::sin(theta / 2);
    return (half * half) * rel + (std::sin(theta) / 2) * gamma_vector(rel, phi);
}

//---------------------------------------------------------------------------//
PostCollision post_collision(Vec3 const& v, Vec3 const& u, double theta, double phi)
{
    Vec3 const a = deflection(v, u, theta, phi);
    return {v + a, u - a};
}

//---------------------------------------------------------------------------//
double wrap_angle(double phi)
{
    constexpr double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0)
    {
        r += two_pi;
    }
    if (r >= two_pi)
    {
        r = 0;
    }
    return r;
}

//---------------------------------------------------------------------------//
double partner_azimuth(double phi)
{
    return wrap_angle(std::numbers::pi - phi);
}

//---------------------------------------------------------------------------//
double tanaka_shift(Vec3 const& v, Vec3 const& u, Vec3 const& vs, Vec3 const& us, double)
{
    Vec3 const x = u - v;
    Vec3 const y = us - vs;
    double const lx = norm(x);
    double const ly = norm(y);
    if (lx == 0 || ly == 0)
    {
        return 0;
    }
    Vec3 const xh = x / lx;
    Vec3 const yh = y / ly;
    Vec3 const e = build_frame(x).i_vec / lx;

    double const c = dot(xh, yh);
    Vec3 rotated = e;
    if (c > -1 + 1e-12)
    {
        Vec3 const a = cross(xh, yh);
        rotated = c * e + cross(a, e) + (dot(a, e) / (1 + c)) * a;
    }

    auto const fy = build_frame(y);
    double const ci = dot(rotated, fy.i_vec) / ly;
    double const cj = dot(rotated, fy.j_vec) / ly;
    return wrap_angle(std::atan2(cj, ci));
}

//---------------------------------------------------------------------------//
}  // namespace enskog
