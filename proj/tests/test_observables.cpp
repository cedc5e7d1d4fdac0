//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file test_observables.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "enskog/observables.hpp"
#include "enskog/vecgeom.hpp"

using namespace enskog;

namespace
{
constexpr double pi = std::numbers::pi;

Ensemble gaussian_ensemble(std::size_t n, std::uint64_t seed)
{
    InitialDistribution init;
    init.pos_scale = 0.4;
    init.vel_scale = 1.0;
    return sample_initial(init, n, seed);
}

CollisionKernel test_kernel()
{
    return {{0.5, 1.0, 0.05}, {1.0, 1.0}, {2.0, 1.0}};
}

double gk(std::function<double(double)> f, double a, double b)
{
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-13);
}
}  // namespace

TEST(Conserved, SimpleEnsemble)
{
    Ensemble e;
    e.particles = {{{0, 0, 0}, {1, 0, 0}}, {{1, 1, 1}, {-1, 0, 0}}};
    auto c = conserved_quantities(e);
    EXPECT_DOUBLE_EQ(c.mass, 1);
    EXPECT_EQ(c.momentum, Vec3{});
    EXPECT_DOUBLE_EQ(c.energy, 1);
    EXPECT_DOUBLE_EQ(integrate(e, [](auto const&) { return 1.0; }), 1);
}

TEST(Moments, GaussianSecondMoment)
{
    auto e = gaussian_ensemble(200000, 4);
    std::vector<double> sq;
    for (auto const& p : e.particles)
        sq.push_back(norm2(p.v));
    auto m = mean_estimate(sq);
    EXPECT_NEAR(moment(e, 2), 3, 4 * m.stderr_);
    EXPECT_NEAR(moment(e, 2), m.mean, 1e-12);
}

TEST(Moments, GrowthFitDropsLeadingTimes)
{
    MomentSeries s;
    s.order = 4;
    for (int k = 0; k <= 20; ++k)
    {
        double t = 0.1 * k;
        s.t.push_back(t);
        // early transient that must be ignored
        s.value.push_back(k < 2 ? 1e6 : 2 * std::pow(t, 2.5));
    }
    EXPECT_NEAR(moment_growth_fit(s).slope, 2.5, 1e-12);
    EXPECT_DOUBLE_EQ(moment_growth_exponent(4, 1), 8);
    s.value[5] = NAN;
    EXPECT_THROW(moment_growth_fit(s), std::domain_error);
}

TEST(Coupling, Exponent)
{
    EXPECT_DOUBLE_EQ(coupling_exponent(1.0), 1.5);
    EXPECT_NEAR(coupling_exponent(0.5), 4.0 / 3, 1e-15);
    EXPECT_NEAR(coupling_exponent(1.5), 1.4, 1e-15);
}

TEST(Coupling, TableAndSlope)
{
    std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    std::vector<std::vector<double>> samples;
    for (double e : eps)
        samples.push_back({std::pow(e, 1.5) * 0.99, std::pow(e, 1.5) * 1.01});
    auto t = coupling_error(eps, samples);
    ASSERT_TRUE(t.fit.has_value());
    EXPECT_NEAR(t.fit->slope, 1.5, 1e-10);
    EXPECT_TRUE(t.warnings.empty());

    samples[3] = {0.0, 0.0};
    auto t2 = coupling_error(eps, samples);
    EXPECT_FALSE(t2.fit.has_value());
    ASSERT_FALSE(t2.warnings.empty());
    EXPECT_NE(t2.warnings[0].find("slope undefined"), std::string::npos);

    samples[3] = {0.001, 0.1};
    auto t3 = coupling_error(eps, samples);
    EXPECT_NE(t3.warnings.at(0).find("insufficient samples"), std::string::npos);
}

TEST(Support, GridAndCoverage)
{
    auto grid = sphere_grid_26(2);
    ASSERT_EQ(grid.size(), 26u);
    for (auto const& g : grid)
        EXPECT_NEAR(norm(g), 2, 1e-14);
    Ensemble e;
    for (auto const& g : grid)
        e.particles.push_back({{}, g});
    auto mass = support_coverage(e, grid, 1);
    for (double m : mass)
        EXPECT_GE(m, 1.0 / 26);
}

TEST(Cone, GaussianMassMatchesQuadrature)
{
    // P(|v| <= 3, |v1| >= 1) = 2 int_1^3 phi(x) (1 - exp(-(9 - x^2)/2)) dx
    auto dens = [](double x) {
        return std::exp(-x * x / 2) / std::sqrt(2 * pi) * (1 - std::exp(-(9 - x * x) / 2));
    };
    double exact = 2 * gk(dens, 1, 3);
    CrossSection cs{1, 1};
    ConeSet cone{{0, 0, 0}, {1, 0, 0}, 0.9 * sigma_rate(cs, 1)};
    auto e = gaussian_ensemble(400000, 21);
    double m = cone_mass(e, cone, cs);
    double se = std::sqrt(exact * (1 - exact) / e.size());
    EXPECT_NEAR(m, exact, 4 * se);
}

TEST(Cone, FarDataHasNoMass)
{
    CrossSection cs{1, 1};
    ConeSet cone{{0, 0, 0}, {1, 0, 0}, 0.5};
    Ensemble e;
    for (int k = 0; k < 100; ++k)
        e.particles.push_back({{}, {9.0 + k, 0, 0}});
    EXPECT_EQ(cone_mass(e, cone, cs), 0);
}

TEST(Cone, JointMassBoundedByVelocityMass)
{
    CrossSection cs{1, 1};
    SpatialMollifier mol{1.0, 1.0};
    ConeSet cone{{0.5, 0, 0}, {0, 1, 0}, sigma_rate(cs, 1) / 2};
    auto e = gaussian_ensemble(20000, 3);
    double full = cone_mass(e, cone, cs);
    double joint = cone_mass_joint(e, cone, cs, mol, {0, 0, 0}, 0.5);
    EXPECT_GT(joint, 0);
    EXPECT_LE(joint, full);
}

TEST(TestBank, CutoffDerivative)
{
    for (double s : {0.5, 1.1, 1.3, 1.5, 1.8, 1.97, 2.5})
    {
        double h = 1e-6;
        double fd = (plateau_cutoff(s + h) - plateau_cutoff(s - h)) / (2 * h);
        EXPECT_NEAR(plateau_cutoff_derivative(s), fd, 1e-6);
    }
    EXPECT_EQ(plateau_cutoff(0.9), 1);
    EXPECT_EQ(plateau_cutoff(2.1), 0);
}

TEST(TestBank, SpatialGradients)
{
    auto bank = default_test_bank();
    ASSERT_EQ(bank.size(), 5u);
    std::mt19937_64 gen(1);
    std::normal_distribution<double> g(0, 1.5);
    for (auto const& psi : bank)
    {
        for (int it = 0; it < 200; ++it)
        {
            Vec3 r{g(gen), g(gen), g(gen)}, v{g(gen), g(gen), g(gen)};
            Vec3 grad = psi.grad_r(r, v);
            for (int k = 0; k < 3; ++k)
            {
                Vec3 rp = r, rm = r;
                rp[k] += 1e-6;
                rm[k] -= 1e-6;
                double fd = (psi.value(rp, v) - psi.value(rm, v)) / 2e-6;
                EXPECT_NEAR(grad[k], fd, 1e-5) << psi.name;
            }
        }
    }
}

TEST(Generator, LinearVelocityClosedForm)
{
    // L v1 = 2 pi (u - v)_1 int sin^2(theta/2) Q(dtheta)
    auto k = test_kernel();
    auto e = gaussian_ensemble(60, 8);
    double s2 = gk([&](double x) {
        double t = std::exp(x);
        return std::pow(std::sin(t / 2), 2) * k.angular.b_coeff * std::pow(t, -k.angular.nu);
    }, std::log(k.angular.theta_min), std::log(pi));
    double expect = 0;
    for (auto const& a : e.particles)
        for (auto const& b : e.particles)
            expect += beta_weight(k.mollifier, a.r - b.r) * sigma_rate(k.cross, norm(a.v - b.v))
                      * 2 * pi * (b.v.x - a.v.x) * s2;
    expect /= double(e.size() * e.size());
    auto bank = default_test_bank();
    double got = generator_expectation(e, bank[2], k);
    EXPECT_NEAR(got, expect, 1e-10 * (1 + std::fabs(expect)));
    // sum is antisymmetric in (i, j)
    EXPECT_NEAR(got, 0, 1e-12);
}

TEST(Generator, BumpMatchesBruteForcePair)
{
    auto k = test_kernel();
    Ensemble e;
    e.particles = {{{0, 0, 0}, {0.3, -0.2, 0.5}}, {{0.4, 0, 0}, {-1.1, 0.7, 0.2}}};
    auto bank = default_test_bank();
    auto const& psi = bank[3];
    auto pair_integral = [&](Vec3 const& v, Vec3 const& u) {
        auto inner = [&](double x) {
            double t = std::exp(x);
            int const nphi = 512;
            double s = 0;
            for (int l = 0; l < nphi; ++l)
            {
                Vec3 a = deflection(v, u, t, 2 * pi * l / nphi);
                s += psi.value({}, v + a) - psi.value({}, v);
            }
            return s * 2 * pi / nphi * k.angular.b_coeff * std::pow(t, -k.angular.nu);
        };
        return gk(inner, std::log(k.angular.theta_min), std::log(pi));
    };
    auto const& a = e.particles[0];
    auto const& b = e.particles[1];
    double rate = beta_weight(k.mollifier, a.r - b.r) * sigma_rate(k.cross, norm(a.v - b.v));
    double expect = rate * (pair_integral(a.v, b.v) + pair_integral(b.v, a.v)) / 4;
    double got = generator_expectation(e, psi, k);
    EXPECT_NEAR(got, expect, 1e-6 * std::fabs(expect));
}

TEST(Generator, RefinementFailureIsReported)
{
    auto k = test_kernel();
    auto e = gaussian_ensemble(20, 2);
    GeneratorQuadrature q;
    q.theta_panels = 1;
    q.phi_nodes = 2;
    q.tolerance = 1e-12;
    EXPECT_THROW(generator_expectation(e, default_test_bank()[3], k, q), QuadratureError);
}

TEST(WeakForm, ConservedFunctionsHaveZeroResidual)
{
    SimConfig cfg;
    cfg.n_particles = 100;
    cfg.t_end = 0.2;
    cfg.dt = 0.01;
    cfg.kernel = test_kernel();
    cfg.init.pos_scale = 0.4;
    cfg.snapshot_times = {0.1};
    auto traj = run(cfg);
    auto bank = default_test_bank();
    auto res = weak_form_residual(nullptr, traj.at(0.1), traj.at(0.2), bank, cfg.kernel);
    EXPECT_EQ(res[0].residual, 0);
    EXPECT_NEAR(res[1].residual, 0, 1e-12);
    EXPECT_NEAR(res[2].residual, 0, 1e-12);
    auto centered = weak_form_residual(&traj.at(0.0), traj.at(0.1), traj.at(0.2), bank, cfg.kernel);
    EXPECT_NEAR(centered[1].residual, 0, 1e-12);
}

TEST(WeakForm, ResidualBiasShrinksWithStep)
{
    SimConfig cfg;
    cfg.n_particles = 40;
    cfg.dt = 0.0025;
    cfg.kernel = test_kernel();
    cfg.init.kind = InitKind::two_cluster;
    cfg.init.pos_scale = 0.4;
    cfg.t_end = 0.1;
    auto at = sample_initial(cfg.init, cfg.n_particles, 3);
    auto bank = default_test_bank();
    auto bias = residual_bias(at, cfg, {0.04, 0.02}, bank, 16);
    ASSERT_EQ(bias.size(), 10u);
    for (std::size_t f = 0; f < 3; ++f)
    {
        EXPECT_NEAR(bias[2 * f].compensator.mean, 0, 1e-12) << bias[2 * f].name;
        EXPECT_NEAR(bias[2 * f].residual.mean, 0, 1e-10) << bias[2 * f].name;
    }
    auto const& big = bias[8];
    auto const& small = bias[9];
    ASSERT_EQ(big.name, "rv_trunc");
    EXPECT_GT(std::fabs(big.compensator.mean), 5 * big.compensator.stderr_);
    EXPECT_LT(std::fabs(small.compensator.mean), std::fabs(big.compensator.mean));
    // both estimators share one expectation
    for (std::size_t f = 6; f < 10; ++f)
    {
        auto const& b = bias[f];
        double se = std::hypot(b.residual.stderr_, b.compensator.stderr_);
        EXPECT_NEAR(b.residual.mean, b.compensator.mean, 4 * se) << b.name << ' ' << b.h;
    }
}
