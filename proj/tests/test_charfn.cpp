//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_charfn.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "enskog/charfn.hpp"
#include "enskog/vecgeom.hpp"

using namespace enskog;
using cplx = std::complex<double>;

namespace
{
constexpr double pi = std::numbers::pi;

CollisionKernel test_kernel()
{
    return {{0.5, 1.0, 1e-3}, {1.0, 1.0}, {2.0, 1.0}};
}

CopyPaths gaussian_copies(std::size_t n, std::size_t steps, double t0, double eps, unsigned seed)
{
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> g(0, 1);
    CopyPaths c;
    c.weight = 1.0 / double(n);
    for (std::size_t k = 0; k < steps; ++k)
    {
        c.time.push_back(t0 + eps * k / steps);
        c.width.push_back(eps / steps);
        std::vector<ParticleState> st;
        for (std::size_t p = 0; p < n; ++p)
            st.push_back({{0.3 * g(gen), 0.3 * g(gen), 0.3 * g(gen)}, {g(gen), g(gen), g(gen)}});
        c.states.push_back(st);
    }
    return c;
}

//! Adaptive oracle over (0, cut) with the exact azimuthal integral
cplx oracle_psi(CharExponentQuery const& q, CopyPaths const& copies, CollisionKernel const& k)
{
    double const cut = std::pow(q.eps, 1 / k.angular.nu);
    cplx total = 0;
    for (std::size_t s = 0; s < copies.states.size(); ++s)
    {
        for (auto const& c : copies.states[s])
        {
            Vec3 x = c.v - q.v0;
            if (norm2(x) == 0)
                continue;
            double rate = copies.width[s] * copies.weight * beta_weight(k.mollifier, q.r0 - c.r)
                          * sigma_rate(k.cross, norm(x));
            if (rate == 0)
                continue;
            double A = dot(q.freq, x);
            double B = norm(x) * norm(q.freq - (A / norm2(x)) * x);
            auto part = [&](bool imag) {
                // integrate in log theta; integrand ~ theta^{2 - nu} as theta -> 0
                auto f = [&](double s) {
                    double th = std::exp(s);
                    double a = std::pow(std::sin(th / 2), 2) * A;
                    double b = std::sin(th) / 2 * B;
                    cplx v = 2 * pi * (1.0 - std::polar(1.0, a) * std::cyl_bessel_j(0.0, b));
                    double dens = k.angular.b_coeff * std::pow(th, -k.angular.nu);
                    return (imag ? v.imag() : v.real()) * dens;
                };
                return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                    f, std::log(cut) - 60, std::log(cut), 20, 1e-14);
            };
            total += rate * cplx(part(false), part(true));
        }
    }
    return total;
}
}  // namespace

TEST(Psi, Trivial)
{
    auto k = test_kernel();
    auto copies = gaussian_copies(8, 3, 0.9, 0.1, 1);
    CharExponentQuery q{0.1, 1.0, {0.2, 0, 0}, {}, {}};
    EXPECT_EQ(psi(q, copies, k), cplx(0));

    CopyPaths same;
    same.time = {0.9};
    same.width = {0.1};
    same.states = {{{{0, 0, 0}, q.v0}}};
    q.freq = {100, -30, 4};
    EXPECT_EQ(psi(q, same, k), cplx(0));

    CopyPaths none;
    EXPECT_THROW(psi(q, none, k), std::invalid_argument);
    q.eps = 1.5;
    EXPECT_THROW(psi(q, copies, k), std::invalid_argument);
}

TEST(Psi, MatchesAdaptiveOracle)
{
    auto k = test_kernel();
    auto copies = gaussian_copies(3, 1, 0.9, 0.1, 2);
    CharExponentQuery q{0.1, 1.0, {0.1, -0.3, 0.2}, {0.1, 0, 0}, {}};
    for (double m : {1.0, 30.0, 300.0, 3000.0})
    {
        q.freq = m * Vec3{0.6, 0.0, 0.8};
        cplx got = psi(q, copies, k);
        cplx want = oracle_psi(q, copies, k);
        EXPECT_LT(std::abs(got - want), 1e-7 * std::abs(want)) << m;
        CharfnOptions b;
        b.phi_method = PhiMethod::bessel;
        EXPECT_LT(std::abs(psi(q, copies, k, b) - want), 1e-7 * std::abs(want)) << m;
    }
}

TEST(Psi, RealPartNonnegativeAndConjugateSymmetric)
{
    auto k = test_kernel();
    auto copies = gaussian_copies(2, 1, 0.9, 0.1, 3);
    std::mt19937_64 gen(5);
    std::normal_distribution<double> g(0, 1);
    std::uniform_real_distribution<double> mag(0, 3);
    for (int it = 0; it < 1000; ++it)
    {
        CharExponentQuery q{0.1, 1.0, {g(gen), g(gen), g(gen)}, {0.2 * g(gen), 0, 0}, {}};
        q.freq = std::pow(10.0, mag(gen)) * Vec3{g(gen), g(gen), g(gen)};
        cplx p = psi(q, copies, k);
        EXPECT_GE(p.real(), 0);
        if (it % 50 == 0)
        {
            CharExponentQuery m = q;
            m.freq = -1.0 * q.freq;
            cplx pm = psi(m, copies, k);
            EXPECT_NEAR(pm.real(), p.real(), 1e-12 * std::abs(p));
            EXPECT_NEAR(pm.imag(), -p.imag(), 1e-12 * std::abs(p));
        }
    }
}

TEST(Psi, CoarseRuleIsRejected)
{
    auto k = test_kernel();
    auto copies = gaussian_copies(4, 1, 0.9, 0.1, 4);
    CharExponentQuery q{0.1, 1.0, {}, {}, {3, 1, 0}};
    CharfnOptions o;
    o.panels_per_log = 0.05;
    o.phi_nodes = 4;
    EXPECT_THROW(psi(q, copies, k, o), CharfnQuadratureError);
    EXPECT_NO_THROW(psi(q, copies, k));
}

TEST(Copies, FromTrajectory)
{
    SimConfig cfg;
    cfg.n_particles = 10;
    cfg.t_end = 0.3;
    cfg.dt = 0.05;
    cfg.kernel = test_kernel();
    cfg.kernel.angular.theta_min = 0.1;
    cfg.snapshot_every = 1;
    auto traj = run(cfg);
    auto c = copies_from_trajectory(traj, 0.1, 0.3, 4);
    ASSERT_EQ(c.states.size(), 4u);
    double w = 0;
    for (double x : c.width)
        w += x;
    EXPECT_NEAR(w, 0.2, 1e-14);
    EXPECT_EQ(c.states[0].size(), 9u);
    EXPECT_DOUBLE_EQ(c.weight, 0.1);
    EXPECT_EQ(c.states[1][4].v, traj.at(0.15).particles[5].v);
    EXPECT_THROW(copies_from_trajectory(traj, 0.12, 0.3), std::invalid_argument);
}

TEST(LowerBound, GaussianCopiesGivePositiveConstant)
{
    auto k = test_kernel();
    auto copies = gaussian_copies(6, 2, 0.9, 0.1, 6);
    CharExponentQuery q{0.1, 1.0, {0.3, 0.1, 0}, {0, 0, 0}, {}};
    std::vector<Vec3> grid;
    for (double m : {0.0, 1.0, 2.0, 5.0, 10.0})
        grid.push_back(m * Vec3{0, 0.6, 0.8});
    auto rep = lower_bound_check(q, grid, copies, k);
    EXPECT_TRUE(rep.passed);
    EXPECT_GT(rep.c, 0);
    ASSERT_EQ(rep.rows.size(), 5u);
    EXPECT_EQ(rep.rows[0].shape, 0);
    double scale = std::pow(q.eps, -1 / k.angular.nu);
    double c_oracle = INFINITY;
    for (std::size_t i = 1; i < grid.size(); ++i)
    {
        double m = norm(grid[i]);
        EXPECT_DOUBLE_EQ(rep.rows[i].shape, m <= 1 ? m * m : std::pow(m, 0.5));
        EXPECT_GE(rep.rows[i].margin, 0);
        CharExponentQuery qq = q;
        qq.freq = scale * grid[i];
        c_oracle = std::min(c_oracle, oracle_psi(qq, copies, k).real() / rep.rows[i].shape);
    }
    EXPECT_NEAR(rep.c, c_oracle, 1e-7 * c_oracle);
}

TEST(LowerBound, DegenerateCopiesFail)
{
    auto k = test_kernel();
    CharExponentQuery q{0.1, 1.0, {1, 0, 0}, {}, {}};
    CopyPaths same;
    same.time = {0.9};
    same.width = {0.1};
    same.states = {{{{0, 0, 0}, q.v0}, {{0.1, 0, 0}, q.v0}}};
    auto rep = lower_bound_check(q, default_lower_bound_grid(), same, k);
    EXPECT_FALSE(rep.passed);
    EXPECT_EQ(rep.c, 0);
    EXPECT_THROW(grad_density_bound(q, same, k), DivergentIntegralError);
}

TEST(Moments, QuadratureAndExplicitBound)
{
    auto k = test_kernel();
    k.cross.gamma = 0.5;
    auto copies = gaussian_copies(6, 3, 0.9, 0.1, 7);
    CharExponentQuery q{0.1, 1.0, {0.5, -0.2, 0.1}, {0, 0, 0}, {}};
    auto m = jump_measure_moments(q, copies, k);
    double cut = std::pow(q.eps, 1 / k.angular.nu);
    auto sin_moment = [&](int n) {
        auto f = [&](double s) {
            double th = std::exp(s);
            return std::pow(std::sin(th / 2), n) * k.angular.b_coeff * std::pow(th, -k.angular.nu);
        };
        return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, std::log(cut) - 80, std::log(cut), 20, 1e-14);
    };
    double s1 = sin_moment(1), s4 = sin_moment(4);
    double m1 = 0, m4 = 0, sup = 0;
    for (std::size_t s = 0; s < copies.states.size(); ++s)
    {
        double inner = 0;
        for (auto const& c : copies.states[s])
        {
            Vec3 x = c.v - q.v0;
            double rate = copies.width[s] * copies.weight * beta_weight(k.mollifier, q.r0 - c.r)
                          * sigma_rate(k.cross, norm(x));
            m1 += rate * 2 * pi * norm(x) / cut * s1;
            m4 += rate * 2 * pi * std::pow(norm(x) / cut, 4) * s4;
            inner += copies.weight * (1 + std::pow(norm(x), 4 + k.cross.gamma));
        }
        sup = std::max(sup, inner);
    }
    EXPECT_NEAR(m.m1, m1, 1e-9 * m1);
    EXPECT_NEAR(m.m4, m4, 1e-9 * m4);
    // sin(x) <= x, beta <= amplitude, sigma(z) |z|^4 <= c 2^{gamma/2} (1 + z^{4+gamma})
    double C = 2 * pi * k.angular.b_coeff * k.mollifier.amplitude * k.cross.c_sigma
               * std::pow(2.0, k.cross.gamma / 2) / (16 * (4 - k.angular.nu));
    EXPECT_LE(m.m4, C * sup);
}

TEST(GradBound, GrowthInVelocityIsControlled)
{
    auto k = test_kernel();
    auto copies = gaussian_copies(4, 2, 0.9, 0.1, 8);
    CharfnOptions o;
    o.phi_method = PhiMethod::bessel;
    std::vector<double> ratio;
    for (double s : {1.0, 2.0, 4.0, 8.0})
    {
        CharExponentQuery q{0.1, 1.0, s * Vec3{0.6, 0.8, 0}, {0, 0, 0}, {}};
        auto b = grad_density_bound(q, copies, k, o);
        EXPECT_GT(b.value, 0);
        EXPECT_GT(b.integral, b.tail);
        ratio.push_back(b.value / (1 + std::pow(s, k.cross.gamma + 4)));
    }
    double first = std::max(ratio[0], ratio[1]);
    EXPECT_LE(ratio[2], 2 * first);
    EXPECT_LE(ratio[3], 2 * first);
}
