//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/vec3.hpp
 * \brief Small fixed-size vector used for positions and velocities.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <ostream>

namespace enskog
{
//---------------------------------------------------------------------------//
struct Vec3
{
    double x{0};
    double y{0};
    double z{0};

    constexpr double operator[](int i) const
    {
        return i == 0 ? x : (i == 1 ? y : z);
    }
    constexpr double& operator[](int i)
    {
        return i == 0 ? x : (i == 1 ? y : z);
    }

    constexpr Vec3& operator+=(Vec3 const& o)
    {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Vec3& operator-=(Vec3 const& o)
    {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Vec3& operator*=(double s)
    {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(Vec3 const&, Vec3 const&) = default;
};

constexpr Vec3 operator+(Vec3 a, Vec3 const& b)
{
    return a += b;
}
constexpr Vec3 operator-(Vec3 a, Vec3 const& b)
{
    return a -= b;
}
constexpr Vec3 operator-(Vec3 const& a)
{
    return {-a.x, -a.y, -a.z};
}
constexpr Vec3 operator*(double s, Vec3 a)
{
    return a *= s;
}
constexpr Vec3 operator*(Vec3 a, double s)
{
    return a *= s;
}
constexpr Vec3 operator/(Vec3 a, double s)
{
    return a *= (1 / s);
}

constexpr double dot(Vec3 const& a, Vec3 const& b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

constexpr Vec3 cross(Vec3 const& a, Vec3 const& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

constexpr double norm2(Vec3 const& a)
{
    return dot(a, a);
}

inline double norm(Vec3 const& a)
{
    return std::sqrt(norm2(a));
}

inline bool is_finite(Vec3 const& a)
{
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

inline std::ostream& operator<<(std::ostream& os, Vec3 const& a)
{
    return os << '(' << a.x << ", " << a.y << ", " << a.z << ')';
}

//---------------------------------------------------------------------------//
}  // namespace enskog
