//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/process.hpp
 * \brief Interacting particle simulation with thinned collision proposals.
 *
 * Each step of length dt proposes collision candidates at a per-pair
 * majorant rate and accepts a candidate (i, j) when its stored uniform z
 * satisfies z < lambda_ij / majorant, with lambda_ij evaluated on the state
 * at the candidate time. Positions stream freely between events.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "kernel.hpp"
#include "particle.hpp"
#include "vec3.hpp"

namespace enskog
{
//---------------------------------------------------------------------------//
enum class Scheme
{
    symmetric_pair,  //!< both partners updated, exact pathwise conservation
    one_sided,  //!< only the first particle of the proposal jumps
};

enum class InitKind
{
    gaussian,
    uniform_ball,
    two_cluster,
};

/*!
 * Initial law descriptor.
 *
 * - gaussian: r ~ N(pos_center, pos_scale^2), v ~ N(vel_center, vel_scale^2)
 * - uniform_ball: uniform in balls of radius pos_scale and vel_scale
 * - two_cluster: gaussian positions; v = vel_center +- vel_offset plus
 *   N(0, vel_scale^2) spread, each sign with probability 1/2
 */
struct InitialDistribution
{
    InitKind kind{InitKind::gaussian};
    double pos_scale{1};
    double vel_scale{1};
    Vec3 pos_center{};
    Vec3 vel_center{};
    Vec3 vel_offset{1.5, 0, 0};

    bool operator==(InitialDistribution const&) const = default;
};

Ensemble sample_initial(InitialDistribution const& init,
                        std::size_t n,
                        std::uint64_t seed,
                        unsigned threads = 1);

//---------------------------------------------------------------------------//
struct CollisionEvent
{
    double time{0};
    std::uint32_t i{0};
    std::uint32_t j{0};
    double theta{0};
    double phi{0};
    double z_uniform{0};
    bool accepted{true};
};

//! Per-step bookkeeping needed to replay and re-thin
struct StepRecord
{
    std::uint64_t index{0};
    double t_start{0};
    double dt{0};
    double pair_majorant{0};
    std::size_t proposals{0};
    std::size_t first_event{0};
    std::size_t n_events{0};
    std::size_t overflow{0};
};

struct EventLog
{
    Scheme scheme{Scheme::symmetric_pair};
    std::vector<CollisionEvent> events;
    std::vector<StepRecord> steps;
    //! Rejected proposals are kept for steps starting at or after this time
    double rejected_from{std::numeric_limits<double>::infinity()};

    std::size_t accepted_count() const;
};

//---------------------------------------------------------------------------//
struct StepOptions
{
    Scheme scheme{Scheme::symmetric_pair};
    std::uint64_t seed{0};
    std::uint64_t step_index{0};
    //! Bound on particle speeds used for the rate majorant
    double speed_bound{0};
    bool record_events{true};
    bool record_rejected{false};
};

struct StepOutcome
{
    StepRecord record;
    std::vector<CollisionEvent> events;
    double max_speed{0};
};

//! Advance the ensemble by dt in place
StepOutcome step(Ensemble& e, CollisionKernel const& kernel, double dt, StepOptions const& opt);

//---------------------------------------------------------------------------//
struct SimConfig
{
    std::size_t n_particles{1000};
    double t_end{1};
    double dt{0.01};
    std::uint64_t seed{1};
    CollisionKernel kernel;
    InitialDistribution init;
    Scheme scheme{Scheme::symmetric_pair};
    //! Extra snapshot times, each on the dt grid; t = start and t_end always kept
    std::vector<double> snapshot_times;
    //! Also keep every k-th step when nonzero
    std::size_t snapshot_every{0};
    bool record_events{true};
    double record_rejected_from{std::numeric_limits<double>::infinity()};
    double majorant_slack{0.25};
    unsigned threads{1};

    bool operator==(SimConfig const&) const = default;
};

//! Throws std::invalid_argument listing every violated constraint
void validate(SimConfig const& cfg);

struct Trajectory
{
    std::vector<Ensemble> snapshots;
    EventLog log;
    std::size_t overflow{0};
    std::vector<std::string> warnings;

    //! Snapshot at time t (must exist)
    Ensemble const& at(double t) const;
};

Trajectory run(SimConfig const& cfg);

//! Continue from an existing ensemble up to cfg.t_end
Trajectory run_from(Ensemble initial, SimConfig const& cfg);

//! Apply the accepted events of steps in [start.t, t_stop) to start
Ensemble replay(Ensemble start, EventLog const& log, double t_stop);

//---------------------------------------------------------------------------//
//! Actual and frozen terminal velocities for every particle
struct FrozenCoupling
{
    std::vector<Vec3> actual;
    std::vector<Vec3> frozen;
    //! Sum of the frozen jumps with theta below the small-jump cut
    std::vector<Vec3> small_jump;
    std::size_t overflow{0};
};

/*!
 * Replay (e_prev.t, t] and build the frozen process for all particles.
 *
 * Rates and deflections use the velocity and position frozen at e_prev;
 * partner states are the replayed ones at each proposal time. Requires the
 * log to hold rejected proposals over the window. Frozen jumps with
 * theta < small_theta are also accumulated separately.
 */
FrozenCoupling frozen_copies(Ensemble const& e_prev,
                             EventLog const& log,
                             CollisionKernel const& kernel,
                             double t,
                             double small_theta = 0);

Vec3 frozen_copy(Ensemble const& e_prev,
                 EventLog const& log,
                 CollisionKernel const& kernel,
                 double t,
                 std::size_t tracked);

//---------------------------------------------------------------------------//
//! Equal-weight integral of f over the ensemble
double integrate(Ensemble const& e, std::function<double(ParticleState const&)> const& f);
Vec3 integrate_vec(Ensemble const& e, std::function<Vec3(ParticleState const&)> const& f);

//---------------------------------------------------------------------------//
void write_snapshots_csv(std::string const& path, std::vector<Ensemble> const& snapshots);
std::vector<Ensemble> read_snapshots_csv(std::string const& path);
void write_events_csv(std::string const& path, EventLog const& log);
std::vector<CollisionEvent> read_events_csv(std::string const& path);

//---------------------------------------------------------------------------//
}  // namespace enskog
