//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/besov.hpp
 * \brief Finite-difference regularity harness for velocity samples.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vec3.hpp"

namespace enskog
{
//---------------------------------------------------------------------------//
enum class HolderFamily
{
    //! exp(1 - 1/(1 - |x - x0|^2 / rho^2)) inside the ball
    bump,
    //! clamp(<x - x0, e> / w, -1, 1)
    ramp,
    //! max(0, 1 - (|x - x0| / rho)^alpha)
    cusp
};

/*!
 * Bounded Holder test function with a certified norm.
 *
 * norm_bound = sup |phi| + Holder constant of exponent hol_alpha.
 */
struct HolderTestFn
{
    std::string id;
    HolderFamily family{HolderFamily::bump};
    double hol_alpha{0.1};
    Vec3 center;
    //! Unit direction (ramp only)
    Vec3 direction{1, 0, 0};
    //! rho for bump and cusp, w for ramp
    double scale{1};
    double sup_norm{1};
    double holder_constant{1};
    double norm_bound{2};

    double operator()(Vec3 const& x) const;
};

HolderTestFn make_bump(double hol_alpha, Vec3 center, double radius);
HolderTestFn make_ramp(double hol_alpha, Vec3 center, Vec3 direction, double width);
HolderTestFn make_cusp(double hol_alpha, Vec3 center, double radius);

//! Bumps at three scales, ramps along the axes and cusps at three points
std::vector<HolderTestFn> default_holder_bank(double hol_alpha);

//! Largest |phi(x) - phi(y)| / |x - y|^alpha over random pairs, over holder_constant
double holder_spot_check(HolderTestFn const& phi, std::size_t pairs, std::uint64_t seed);

//---------------------------------------------------------------------------//
//! |mean over sample of phi(V + h) - phi(V)|
double finite_diff_functional(std::vector<Vec3> const& sample,
                              HolderTestFn const& phi,
                              Vec3 const& h);

class BesovParameterError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct Interval
{
    double lo{0};
    double hi{0};
    bool empty() const { return !(lo < hi); }
};

//! ((gamma+1)/(2 gamma+1), nu); throws BesovParameterError when empty
Interval admissible_c_interval(double gamma, double nu);

//! Same interval without the emptiness check
Interval c_interval(double gamma, double nu);

/*!
 * Largest exponent a reachable by the eps = |h|^c tradeoff:
 * max over admissible c of min((2 gamma+1)/(gamma+1) c alpha, 1 - c/nu).
 */
double tradeoff_exponent(double gamma, double nu, double hol_alpha, double* best_c = nullptr);

//! Midpoint of (hol_alpha, tradeoff_exponent)
double default_besov_a(double gamma, double nu, double hol_alpha);

//! 16 log-spaced magnitudes in [1e-3, 1] times three fixed directions
std::vector<Vec3> default_h_grid();

struct BesovRow
{
    std::string phi_id;
    Vec3 h;
    double h_norm{0};
    double value{0};
    double ratio{0};
    double mc_stderr{0};
    //! eps = |h|^c for the chosen c
    double eps{0};
};

struct BesovEstimate
{
    double kappa_hat{0};
    double a{0};
    double hol_alpha{0};
    double c{0};
    Interval c_range;
    std::vector<BesovRow> rows;
};

struct BesovOptions
{
    double gamma{1};
    double nu{0.9};
    unsigned threads{1};
};

/*!
 * kappa_hat = max over (phi, h) of I / (norm_bound |h|^a).
 *
 * Throws BesovParameterError when the c-interval for (gamma, nu) is empty
 * or when the order 0 < hol_alpha < a < 1 fails.
 */
BesovEstimate besov_estimate(std::vector<Vec3> const& sample,
                             double hol_alpha,
                             double a,
                             std::vector<Vec3> const& h_grid,
                             std::vector<HolderTestFn> const& bank,
                             BesovOptions const& opt = {});

//---------------------------------------------------------------------------//
struct Box
{
    Vec3 lo{-4, -4, -4};
    Vec3 hi{4, 4, 4};
};

struct DensityField
{
    Box box;
    //! Points per axis; node k sits at lo + k * spacing
    std::array<std::size_t, 3> n{0, 0, 0};
    Vec3 spacing;
    std::vector<double> values;
    double bandwidth{0};

    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const
    {
        return (i * n[1] + j) * n[2] + k;
    }
    Vec3 node(std::size_t i, std::size_t j, std::size_t k) const;
    //! Trapezoidal integral over the box
    double integral() const;
};

//! Rule-of-thumb bandwidth sigma * (4/5)^{1/7} n^{-1/7} for a 3-d sample
double silverman_bandwidth(std::vector<Vec3> const& sample);

//! Gaussian-kernel estimate on a resolution^3 lattice spanning the box
DensityField kde_density(std::vector<Vec3> const& sample,
                         double bandwidth,
                         Box const& box,
                         std::size_t resolution,
                         unsigned threads = 1);

//! Fraction of the sample inside the box
double in_box_fraction(std::vector<Vec3> const& sample, Box const& box);

/*!
 * ||f||_1 + sup over lattice shifts 0 < |h| < 1 of |h|^{-s} ||f(. + h) - f||_1.
 *
 * Shifts wrap around the box.
 */
double besov_seminorm(DensityField const& field, double s, unsigned threads = 1);

void write_density_csv(std::string const& path, DensityField const& field);

//---------------------------------------------------------------------------//
}  // namespace enskog
