//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/charfn.hpp
 * \brief Characteristic exponent of the small-jump part of the frozen process.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kernel.hpp"
#include "particle.hpp"
#include "process.hpp"

namespace enskog
{
//---------------------------------------------------------------------------//
struct CharExponentQuery
{
    double eps{0.1};
    double t{1};
    Vec3 v0;
    Vec3 r0;
    //! Fourier variable kappa
    Vec3 freq;
};

/*!
 * Partner paths on [t - eps, t], piecewise constant in time.
 *
 * states[k] holds all copies on [time[k], time[k] + width[k]); each copy
 * carries mass `weight`.
 */
struct CopyPaths
{
    std::vector<double> time;
    std::vector<double> width;
    std::vector<std::vector<ParticleState>> states;
    double weight{1};

    bool empty() const;
};

//! Copies from the snapshots in [t0, t1), optionally dropping one particle
CopyPaths copies_from_trajectory(Trajectory const& traj,
                                 double t0,
                                 double t1,
                                 std::optional<std::size_t> exclude = std::nullopt);

enum class PhiMethod
{
    //! Uniform rule with at least phi_nodes points
    quadrature,
    //! Exact azimuthal integral 2 pi (1 - e^{ia} J0(b))
    bessel
};

struct CharfnOptions
{
    double theta_floor{1e-8};
    //! Add the leading-order contribution of (0, theta_floor)
    bool analytic_tail{true};
    int phi_nodes{64};
    PhiMethod phi_method{PhiMethod::quadrature};
    //! Gauss panels per unit of log(theta)
    double panels_per_log{2};
    //! Relative tolerance of the refinement check; non-positive disables it
    double tolerance{1e-6};
    //! Copy nodes used in the refinement check
    std::size_t check_copies{16};
    //! Largest |kappa| integrated numerically by grad_density_bound
    double grad_radius_cap{30};
    unsigned threads{1};
};

class CharfnQuadratureError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class DivergentIntegralError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Small-jump cut eps^{1/nu}
double small_jump_cut(double eps, double nu);

/*!
 * psi(kappa) = int ds int eta(dc) int_{theta_floor}^{eps^{1/nu}} int dphi
 *   (1 - exp(i <kappa, alpha(v0, u, theta, phi)>)) sigma(|v0 - u|) beta(r0 - q) Q(dtheta)
 */
std::complex<double> psi(CharExponentQuery const& q,
                         CopyPaths const& copies,
                         CollisionKernel const& kernel,
                         CharfnOptions const& opt = {});

struct LowerBoundRow
{
    Vec3 kappa;
    double re_psi{0};
    double im_psi{0};
    //! min(|kappa|^2, |kappa|^nu)
    double shape{0};
    double margin{0};
};

struct LowerBoundReport
{
    //! Largest c with Re psi(eps^{-1/nu} kappa) >= c shape(kappa) on the grid
    double c{0};
    std::vector<LowerBoundRow> rows;
    bool passed{false};
};

LowerBoundReport lower_bound_check(CharExponentQuery const& base,
                                   std::vector<Vec3> const& freq_grid,
                                   CopyPaths const& copies,
                                   CollisionKernel const& kernel,
                                   CharfnOptions const& opt = {});

//! |kappa| in {1, 2, 5, 10} along the three axes and the diagonal
std::vector<Vec3> default_lower_bound_grid();

struct JumpMeasureMoments
{
    double m1{0};
    double m4{0};
};

//! Absolute moments of the jump measure rescaled by eps^{-1/nu}
JumpMeasureMoments jump_measure_moments(CharExponentQuery const& q,
                                        CopyPaths const& copies,
                                        CollisionKernel const& kernel,
                                        CharfnOptions const& opt = {});

struct GradDensityBound
{
    JumpMeasureMoments moments;
    double c_fit{0};
    //! int e^{-Re Phi(kappa)} (1 + |kappa|) dkappa, Phi(kappa) = psi(eps^{-1/nu} kappa)
    double integral{0};
    //! Tail constant: c_fit, or Re Phi / |kappa|^nu at the cutoff when larger
    double c_tail{0};
    //! Part of the integral beyond the radial cutoff, bounded with c_tail
    double tail{0};
    //! eps^{-1/nu} (1 + m1^4 + m4) * integral, universal constant set to 1
    double value{0};
};

GradDensityBound grad_density_bound(CharExponentQuery const& q,
                                    CopyPaths const& copies,
                                    CollisionKernel const& kernel,
                                    CharfnOptions const& opt = {});

//---------------------------------------------------------------------------//
}  // namespace enskog
