//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/config.hpp
 * \brief Plain-text run configuration.
 *
 * One `key = value` per line; `#` starts a comment. Lists are comma
 * separated, vectors are three comma-separated numbers.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "process.hpp"

namespace enskog
{
//---------------------------------------------------------------------------//
enum class Workflow
{
    run,
    coupling,
    charfn,
    besov,
    support
};

char const* to_string(Workflow w);
Workflow workflow_from_string(std::string_view s);

struct RunConfig
{
    //! dt defaults to 0.005 so every default window is a whole number of steps
    SimConfig sim = [] {
        SimConfig s;
        s.dt = 0.005;
        return s;
    }();
    Workflow workflow{Workflow::run};
    std::string out_dir{"out"};
    //! Times at which observables and weak-form residuals are reported
    std::vector<double> checkpoints;
    //! Subset of conserved, moments, weak_form
    std::vector<std::string> observables{"conserved", "moments"};
    //! Names from the default test bank used for weak-form residuals
    std::vector<std::string> test_bank{"one", "r1", "v1", "v_bump", "rv_trunc"};
    std::vector<double> moment_orders{2, 4};

    std::vector<double> coupling_eps{0.2, 0.1, 0.05, 0.025};
    std::size_t coupling_seeds{32};
    //! Evaluation time; zero means t_end
    double coupling_t{0};
    double coupling_min_slope{1.0};

    double charfn_eps{0.05};
    //! Window end; zero means t_end
    double charfn_t{0};
    std::size_t charfn_tracked{0};
    std::vector<double> charfn_kappa{1, 2, 5, 10};
    double charfn_theta_floor{1e-8};

    double hol_alpha{0.1};
    //! Zero picks the midpoint of (hol_alpha, best reachable exponent)
    double besov_a{0};
    //! Sample time; zero means t_end
    double besov_t{0};
    //! Independent runs (seeds seed, seed+1, ...) pooled into the sample
    std::size_t besov_runs{1};
    std::size_t kde_resolution{33};
    double kde_half_width{4};

    //! Sample time; zero means t_end
    double support_t{0};
    double support_sphere{2};
    double support_radius{1};
    //! Cone threshold on sigma; zero means c_sigma
    double cone_m{0};
    //! Spatial threshold on beta; zero means amplitude / 2
    double cone_m_beta{0};

    double coupling_time() const { return coupling_t > 0 ? coupling_t : sim.t_end; }
    double charfn_time() const { return charfn_t > 0 ? charfn_t : sim.t_end; }
    double besov_time() const { return besov_t > 0 ? besov_t : sim.t_end; }
    double support_time() const { return support_t > 0 ? support_t : sim.t_end; }

    bool operator==(RunConfig const&) const = default;
};

//! Every violation found while reading or validating a configuration
class ConfigError : public std::runtime_error
{
  public:
    explicit ConfigError(std::vector<std::string> violations);

    std::vector<std::string> const& violations() const { return violations_; }

  private:
    std::vector<std::string> violations_;
};

struct LoadedConfig
{
    RunConfig config;
    std::vector<std::string> warnings;
};

//! Parse text; `origin` prefixes line-numbered messages
LoadedConfig parse_config(std::string_view text, std::string const& origin = "<config>");
LoadedConfig load_config(std::string const& path);

//! Range violations; empty when the configuration is usable
std::vector<std::string> validate(RunConfig const& cfg);

//! Non-fatal findings, such as an empty c-interval for the besov workflow
std::vector<std::string> config_warnings(RunConfig const& cfg);

//! Every key in canonical order
std::string serialize(RunConfig const& cfg);

/*!
 * Ordered (key, value) strings.
 *
 * With `outcome_only` the worker count and output directory are dropped;
 * neither changes any output file.
 */
std::vector<std::pair<std::string, std::string>> config_entries(RunConfig const& cfg,
                                                                bool outcome_only = false);

//---------------------------------------------------------------------------//
}  // namespace enskog
