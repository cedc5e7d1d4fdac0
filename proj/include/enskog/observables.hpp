//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/observables.hpp
 * \brief Diagnostics computed from snapshots and coupled frozen runs.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kernel.hpp"
#include "particle.hpp"
#include "process.hpp"
#include "stats.hpp"

namespace enskog
{
//---------------------------------------------------------------------------//
struct ConservedQuantities
{
    double mass{0};
    Vec3 momentum;
    //! Mean of |v|^2
    double energy{0};
};

ConservedQuantities conserved_quantities(Ensemble const& e);

//! Mean of |v|^p
double moment(Ensemble const& e, double p);

struct MomentSeries
{
    double order{0};
    std::vector<double> t;
    std::vector<double> value;
};

MomentSeries moment_series(std::vector<Ensemble> const& snapshots, double p);

//! Log-log growth fit of a moment series, dropping the leading fraction of times
LinearFit moment_growth_fit(MomentSeries const& s, double discard_fraction = 0.1);

//! Growth exponent 2p / (2 - gamma) of the moment bound
double moment_growth_exponent(double p, double gamma);

//---------------------------------------------------------------------------//
//! Coupling exponent 1 + min(gamma, 1) / (gamma + 1)
double coupling_exponent(double gamma);

//! Mean over particles of |V_t - V_t^eps| for one run
double coupling_sample(Trajectory const& traj, CollisionKernel const& kernel, double t, double eps);

struct CouplingRow
{
    double eps{0};
    double mean{0};
    double stderr_{0};
};

struct CouplingTable
{
    std::vector<CouplingRow> rows;
    //! Empty when some window shows no coupling error at all
    std::optional<LinearFit> fit;
    std::vector<std::string> warnings;
};

/*!
 * Tabulate per-seed coupling samples and fit log(mean) against log(eps).
 *
 * samples[q][s] is the coupling sample of seed s at eps[q].
 */
CouplingTable coupling_error(std::vector<double> const& eps,
                             std::vector<std::vector<double>> const& samples);

//---------------------------------------------------------------------------//
//! The 26 directions of {-1,0,1}^3 \ {0}, normalised and scaled to radius
std::vector<Vec3> sphere_grid_26(double radius);

//! Empirical velocity mass of each ball B(center, radius)
std::vector<double> support_coverage(Ensemble const& e,
                                     std::vector<Vec3> const& centers,
                                     double radius);

/*!
 * Velocity cone: |v| <= 3, |v - u| >= 1, sigma(|v - u|) >= m and
 * |<v - u, xi>| >= |xi|.
 */
struct ConeSet
{
    Vec3 u;
    Vec3 xi;
    double m{0};
};

bool in_cone(ConeSet const& cone, CrossSection const& cs, Vec3 const& v);

double cone_mass(Ensemble const& e, ConeSet const& cone, CrossSection const& cs);

//! Mass of the cone times the spatial set {beta(r - r0) >= m_beta}
double cone_mass_joint(Ensemble const& e,
                       ConeSet const& cone,
                       CrossSection const& cs,
                       SpatialMollifier const& mollifier,
                       Vec3 const& r0,
                       double m_beta);

//---------------------------------------------------------------------------//
struct TestFunction
{
    std::string name;
    std::function<double(Vec3 const&, Vec3 const&)> value;
    std::function<Vec3(Vec3 const&, Vec3 const&)> grad_r;
    bool depends_on_velocity{true};
};

struct TestBankOptions
{
    double bump_radius{2.5};
    double r_cut{2};
    double v_cut{3};
};

//! 1, r_x, v_x, a radial bump in v, and a smoothly truncated r.v
std::vector<TestFunction> default_test_bank(TestBankOptions const& opt = {});

//! Smooth step: 1 on [0,1], 0 beyond 2
double plateau_cutoff(double s);
double plateau_cutoff_derivative(double s);

struct GeneratorQuadrature
{
    int theta_panels{8};
    int phi_nodes{32};
    //! Relative tolerance of the refinement check
    double tolerance{1e-4};
    //! Pairs used in the refinement check
    std::size_t check_pairs{16};
};

//! Raised when refining the angular rule moves the collision term too much
class QuadratureError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/*!
 * Empirical generator <mu x mu, A psi>.
 *
 * Transport part (1/N) sum v_i . grad_r psi plus the collision part
 * (1/N^2) sum_{i,j} sigma beta int int (psi(r_i, v_i + alpha) - psi(r_i, v_i)).
 */
double generator_expectation(Ensemble const& e,
                             TestFunction const& psi,
                             CollisionKernel const& kernel,
                             GeneratorQuadrature const& quad = {},
                             unsigned threads = 1);

struct WeakFormResidual
{
    std::string name;
    double t{0};
    double h{0};
    double difference{0};
    double generator{0};
    //! Signed: finite difference of <mu, psi> minus the generator term
    double residual{0};
};

/*!
 * Weak-form residuals at `at`.
 *
 * With `before` null the time derivative is the forward difference
 * (after - at) / h; otherwise the centered (after - before) / (2h).
 */
std::vector<WeakFormResidual> weak_form_residual(Ensemble const* before,
                                                 Ensemble const& at,
                                                 Ensemble const& after,
                                                 std::vector<TestFunction> const& bank,
                                                 CollisionKernel const& kernel,
                                                 GeneratorQuadrature const& quad = {},
                                                 unsigned threads = 1);

struct ResidualBias
{
    std::string name;
    double h{0};
    //! Sample mean of the forward residual itself
    MeanEstimate residual;
    //! Same mean through the compensator, (1/h) int_0^h (G(t+s) - G(t)) ds
    MeanEstimate compensator;
    //! Per-replicate values behind the two means
    std::vector<double> residual_samples;
    std::vector<double> compensator_samples;
};

/*!
 * Conditional mean of the forward residual given the state `at`.
 *
 * Runs `replicates` independent continuations of length max(h). The
 * compensator column integrates the generator along each path with Simpson's
 * rule; it has the same expectation as the raw residual and far less noise.
 */
std::vector<ResidualBias> residual_bias(Ensemble const& at,
                                        SimConfig const& cfg,
                                        std::vector<double> const& h,
                                        std::vector<TestFunction> const& bank,
                                        std::size_t replicates,
                                        GeneratorQuadrature const& quad = {});

//---------------------------------------------------------------------------//
struct ObservableRow
{
    std::string observable;
    double t{0};
    double value{0};
    double stderr_{0};
};

void write_observables_csv(std::string const& path, std::vector<ObservableRow> const& rows);

//---------------------------------------------------------------------------//
}  // namespace enskog
