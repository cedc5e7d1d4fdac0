//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file process.cpp
//---------------------------------------------------------------------------//
#include "enskog/process.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "enskog/parallel.hpp"
#include "enskog/rng.hpp"
#include "enskog/vecgeom.hpp"

namespace enskog
{
namespace
{
constexpr double two_pi = 2 * std::numbers::pi;

Vec3 uniform_in_ball(CounterRng& rng, double radius)
{
    Vec3 g{rng.normal(), rng.normal(), rng.normal()};
    double const len = norm(g);
    double const r = radius * std::cbrt(rng.uniform());
    return len > 0 ? (r / len) * g : Vec3{};
}

Vec3 gaussian_vec(CounterRng& rng, double scale)
{
    return {scale * rng.normal(), scale * rng.normal(), scale * rng.normal()};
}

// Positions are kept lazily: particle k sits at r_k + v_k (s - sync_k).
struct LazyState
{
    Ensemble& e;
    std::vector<double> sync;

    LazyState(Ensemble& ens, double t0) : e(ens), sync(ens.size(), t0) {}

    Vec3 position(std::size_t k, double s) const
    {
        return e.particles[k].r + (s - sync[k]) * e.particles[k].v;
    }
    void advance(std::size_t k, double s)
    {
        e.particles[k].r = this->position(k, s);
        sync[k] = s;
    }
    void finish(double t1)
    {
        for (std::size_t k = 0; k < e.size(); ++k)
            this->advance(k, t1);
    }
};

void apply_event(LazyState& state, Scheme scheme, CollisionEvent const& ev)
{
    auto& pi_ = state.e.particles[ev.i];
    auto& pj = state.e.particles[ev.j];
    state.advance(ev.i, ev.time);
    if (scheme == Scheme::symmetric_pair)
    {
        state.advance(ev.j, ev.time);
        auto const out = post_collision(pi_.v, pj.v, ev.theta, ev.phi);
        pi_.v = out.v;
        pj.v = out.u;
    }
    else
    {
        pi_.v = pi_.v + deflection(pi_.v, pj.v, ev.theta, ev.phi);
    }
}

double max_speed(Ensemble const& e)
{
    double m = 0;
    for (auto const& p : e.particles)
        m = std::max(m, norm(p.v));
    return m;
}

std::uint64_t grid_index(double t, double dt, char const* what)
{
    double const k = std::round(t / dt);
    if (std::fabs(k * dt - t) > 1e-9 * std::max(1.0, std::fabs(t)))
    {
        std::ostringstream os;
        os << what << " " << t << " is not a multiple of dt = " << dt;
        throw std::invalid_argument(os.str());
    }
    return static_cast<std::uint64_t>(k);
}

double number_pairs(Scheme scheme, std::size_t n)
{
    double const nn = static_cast<double>(n);
    return scheme == Scheme::one_sided ? nn * (nn - 1) : nn * (nn - 1) / 2;
}
}  // namespace

//---------------------------------------------------------------------------//
Ensemble sample_initial(InitialDistribution const& init,
                        std::size_t n,
                        std::uint64_t seed,
                        unsigned threads)
{
    Ensemble e;
    e.particles.resize(n);
    constexpr std::size_t chunk = 4096;
    parallel_for(chunk_count(n, chunk), threads, [&](std::size_t c) {
        auto const range = chunk_range(n, chunk, c);
        for (std::size_t k = range.begin; k < range.end; ++k)
        {
            CounterRng rng(seed, StreamPurpose::initial_state, k);
            ParticleState p;
            switch (init.kind)
            {
                case InitKind::gaussian:
                    p.r = init.pos_center + gaussian_vec(rng, init.pos_scale);
                    p.v = init.vel_center + gaussian_vec(rng, init.vel_scale);
                    break;
                case InitKind::uniform_ball:
                    p.r = init.pos_center + uniform_in_ball(rng, init.pos_scale);
                    p.v = init.vel_center + uniform_in_ball(rng, init.vel_scale);
                    break;
                case InitKind::two_cluster: {
                    p.r = init.pos_center + gaussian_vec(rng, init.pos_scale);
                    double const sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
                    p.v = init.vel_center + sign * init.vel_offset
                          + gaussian_vec(rng, init.vel_scale);
                    break;
                }
            }
            e.particles[k] = p;
        }
    });
    return e;
}

//---------------------------------------------------------------------------//
std::size_t EventLog::accepted_count() const
{
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [](auto const& ev) { return ev.accepted; }));
}

//---------------------------------------------------------------------------//
StepOutcome step(Ensemble& e, CollisionKernel const& kernel, double dt, StepOptions const& opt)
{
    StepOutcome out;
    out.record.index = opt.step_index;
    out.record.t_start = e.t;
    out.record.dt = dt;
    std::size_t const n = e.size();
    if (n < 2)
        throw std::invalid_argument("step: ensemble needs at least two particles");
    if (dt <= 0)
    {
        out.max_speed = max_speed(e);
        return out;
    }

    double const t0 = e.t;
    double const t1 = t0 + dt;
    double const mass = collision_mass(kernel);
    double const majorant = kernel.mollifier.amplitude
                            * sigma_rate(kernel.cross, 2 * opt.speed_bound) * mass
                            / static_cast<double>(n);
    out.record.pair_majorant = majorant;
    double const total = majorant * number_pairs(opt.scheme, n);

    LazyState state(e, t0);
    CounterRng rng(opt.seed, StreamPurpose::collision, opt.step_index);
    double fastest = 0;
    double s = t0;
    while (total > 0)
    {
        s += rng.exponential() / total;
        if (!(s < t1))
            break;
        auto const i = rng.index(n);
        auto j = rng.index(n - 1);
        if (j >= i)
            ++j;
        double const z = rng.uniform();
        double const u_theta = rng.uniform();
        double const u_phi = rng.uniform();
        ++out.record.proposals;

        auto const& pi_ = e.particles[i];
        auto const& pj = e.particles[j];
        double const beta = beta_weight(kernel.mollifier, state.position(i, s) - state.position(j, s));
        double ratio = 0;
        if (beta > 0)
        {
            ratio = beta * sigma_rate(kernel.cross, norm(pi_.v - pj.v)) * mass
                    / static_cast<double>(n) / majorant;
        }
        if (ratio > 1)
            ++out.record.overflow;
        bool const accepted = z < ratio;
        if (!accepted && !opt.record_rejected)
            continue;

        CollisionEvent ev;
        ev.time = s;
        ev.i = static_cast<std::uint32_t>(i);
        ev.j = static_cast<std::uint32_t>(j);
        ev.theta = sample_theta(kernel.angular, u_theta);
        ev.phi = two_pi * u_phi;
        ev.z_uniform = z;
        ev.accepted = accepted;
        if (accepted)
        {
            apply_event(state, opt.scheme, ev);
            if (!is_finite(e.particles[i].v) || !is_finite(e.particles[j].v))
                throw std::runtime_error("step: non-finite velocity after collision");
            fastest = std::max({fastest, norm(e.particles[i].v), norm(e.particles[j].v)});
        }
        if (opt.record_events)
            out.events.push_back(ev);
    }
    state.finish(t1);
    e.t = t1;
    out.record.n_events = out.events.size();
    out.max_speed = std::max(fastest, max_speed(e));
    return out;
}

//---------------------------------------------------------------------------//
void validate(SimConfig const& cfg)
{
    std::vector<std::string> errs;
    if (cfg.n_particles < 2)
        errs.emplace_back("n_particles must be at least 2");
    if (!(cfg.dt > 0))
        errs.emplace_back("dt must be positive");
    if (!(cfg.t_end > 0))
        errs.emplace_back("t_end must be positive");
    auto const& k = cfg.kernel;
    if (!(k.angular.nu > 0 && k.angular.nu < 1))
        errs.emplace_back("nu must lie in (0, 1)");
    if (!(k.angular.b_coeff > 0))
        errs.emplace_back("b_coeff must be positive");
    if (!(k.angular.theta_min > 0 && k.angular.theta_min < std::numbers::pi))
        errs.emplace_back("theta_min must lie in (0, pi)");
    if (!(k.cross.gamma > 0 && k.cross.gamma < 2))
        errs.emplace_back("gamma must lie in (0, 2)");
    if (!(k.cross.c_sigma >= 1))
        errs.emplace_back("c_sigma must be at least 1");
    if (!(k.mollifier.r_beta > 0) || !(k.mollifier.amplitude > 0))
        errs.emplace_back("r_beta and amplitude must be positive");
    if (!(cfg.majorant_slack >= 0))
        errs.emplace_back("majorant_slack must be nonnegative");
    if (cfg.init.pos_scale < 0 || cfg.init.vel_scale < 0)
        errs.emplace_back("initial scales must be nonnegative");
    if (cfg.init.kind != InitKind::two_cluster && cfg.init.vel_scale == 0)
        errs.emplace_back("initial velocity law would be a Dirac mass");
    if (cfg.init.kind == InitKind::two_cluster && cfg.init.vel_scale == 0
        && norm(cfg.init.vel_offset) == 0)
        errs.emplace_back("initial velocity law would be a Dirac mass");
    if (errs.empty() && cfg.dt > 0)
    {
        for (double t : cfg.snapshot_times)
        {
            if (t < 0 || t > cfg.t_end * (1 + 1e-12))
                errs.emplace_back("snapshot time outside [0, t_end]");
        }
    }
    if (!errs.empty())
    {
        std::string msg = "invalid simulation config:";
        for (auto const& s : errs)
            msg += "\n  " + s;
        throw std::invalid_argument(msg);
    }
}

//---------------------------------------------------------------------------//
Ensemble const& Trajectory::at(double t) const
{
    for (auto const& s : snapshots)
    {
        if (std::fabs(s.t - t) <= 1e-9 * std::max(1.0, std::fabs(t)))
            return s;
    }
    std::ostringstream os;
    os << "no snapshot at t = " << t;
    throw std::out_of_range(os.str());
}

Trajectory run(SimConfig const& cfg)
{
    validate(cfg);
    return run_from(sample_initial(cfg.init, cfg.n_particles, cfg.seed, cfg.threads), cfg);
}

Trajectory run_from(Ensemble e, SimConfig const& cfg)
{
    validate(cfg);
    if (e.size() < 2)
        throw std::invalid_argument("run_from: ensemble needs at least two particles");
    std::uint64_t const k_begin = grid_index(e.t, cfg.dt, "start time");
    std::uint64_t const k_end = grid_index(cfg.t_end, cfg.dt, "t_end");
    std::vector<char> keep(k_end + 1, 0);
    keep[k_begin] = keep[k_end] = 1;
    for (double t : cfg.snapshot_times)
    {
        auto const k = grid_index(t, cfg.dt, "snapshot time");
        if (k >= k_begin && k <= k_end)
            keep[k] = 1;
    }
    if (cfg.snapshot_every > 0)
    {
        for (auto k = k_begin; k <= k_end; k += cfg.snapshot_every)
            keep[k] = 1;
    }

    Trajectory traj;
    traj.log.scheme = cfg.scheme;
    traj.log.rejected_from = cfg.record_rejected_from;
    e.t = static_cast<double>(k_begin) * cfg.dt;
    traj.snapshots.push_back(e);

    double vmax = max_speed(e);
    bool warned_dt = false;
    for (auto k = k_begin; k < k_end; ++k)
    {
        e.t = static_cast<double>(k) * cfg.dt;
        StepOptions opt;
        opt.scheme = cfg.scheme;
        opt.seed = cfg.seed;
        opt.step_index = k;
        opt.speed_bound = (1 + cfg.majorant_slack) * vmax;
        opt.record_events = cfg.record_events;
        opt.record_rejected = cfg.record_events && e.t >= cfg.record_rejected_from - 1e-12;
        auto outcome = step(e, cfg.kernel, cfg.dt, opt);
        e.t = static_cast<double>(k + 1) * cfg.dt;

        if (!warned_dt && outcome.record.pair_majorant * cfg.dt > 0.1)
        {
            traj.warnings.emplace_back("pair rate majorant times dt exceeds 0.1");
            warned_dt = true;
        }
        outcome.record.first_event = traj.log.events.size();
        traj.overflow += outcome.record.overflow;
        traj.log.steps.push_back(outcome.record);
        traj.log.events.insert(traj.log.events.end(), outcome.events.begin(), outcome.events.end());
        vmax = std::max(vmax, outcome.max_speed);
        if (keep[k + 1])
            traj.snapshots.push_back(e);
    }
    if (traj.overflow > 0)
    {
        traj.warnings.emplace_back("thinning bound violated by " + std::to_string(traj.overflow)
                                   + " proposals");
    }
    return traj;
}

//---------------------------------------------------------------------------//
Ensemble replay(Ensemble e, EventLog const& log, double t_stop)
{
    double const tol = 1e-12 * std::max(1.0, std::fabs(t_stop));
    for (auto const& rec : log.steps)
    {
        if (rec.t_start < e.t - tol || rec.t_start >= t_stop - tol)
            continue;
        e.t = rec.t_start;
        LazyState state(e, rec.t_start);
        for (std::size_t q = rec.first_event; q < rec.first_event + rec.n_events; ++q)
        {
            if (log.events[q].accepted)
                apply_event(state, log.scheme, log.events[q]);
        }
        state.finish(rec.t_start + rec.dt);
        e.t = rec.t_start + rec.dt;
    }
    return e;
}

//---------------------------------------------------------------------------//
FrozenCoupling frozen_copies(Ensemble const& e_prev,
                             EventLog const& log,
                             CollisionKernel const& kernel,
                             double t,
                             double small_theta)
{
    if (log.rejected_from > e_prev.t + 1e-12)
    {
        throw std::invalid_argument(
            "frozen_copies: the log does not keep rejected proposals over the window");
    }
    double const tol = 1e-12 * std::max(1.0, std::fabs(t));
    std::size_t const n = e_prev.size();
    double const mass = collision_mass(kernel);

    Ensemble e = e_prev;
    FrozenCoupling out;
    out.frozen.resize(n);
    out.small_jump.assign(n, Vec3{});
    for (std::size_t k = 0; k < n; ++k)
        out.frozen[k] = e_prev.particles[k].v;

    auto frozen_jump = [&](std::size_t p, Vec3 const& vp, Vec3 const& uo,
                           Vec3 const& qo, CollisionEvent const& ev, double phi, double majorant) {
        auto const& prev = e_prev.particles[p];
        double const beta = beta_weight(kernel.mollifier, prev.r - qo);
        if (beta == 0)
            return;
        double const rate = beta * sigma_rate(kernel.cross, norm(prev.v - uo)) * mass
                            / static_cast<double>(n);
        double const ratio = rate / majorant;
        if (ratio > 1)
            ++out.overflow;
        if (!(ev.z_uniform < ratio))
            return;
        double const xi0 = tanaka_shift(vp, uo, prev.v, uo, phi);
        Vec3 const jump = deflection(prev.v, uo, ev.theta, phi + xi0);
        out.frozen[p] += jump;
        if (ev.theta < small_theta)
            out.small_jump[p] += jump;
    };

    for (auto const& rec : log.steps)
    {
        if (rec.t_start < e_prev.t - tol || rec.t_start >= t - tol)
            continue;
        e.t = rec.t_start;
        LazyState state(e, rec.t_start);
        for (std::size_t q = rec.first_event; q < rec.first_event + rec.n_events; ++q)
        {
            auto const& ev = log.events[q];
            Vec3 const vi = e.particles[ev.i].v;
            Vec3 const vj = e.particles[ev.j].v;
            Vec3 const ri = state.position(ev.i, ev.time);
            Vec3 const rj = state.position(ev.j, ev.time);
            frozen_jump(ev.i, vi, vj, rj, ev, ev.phi, rec.pair_majorant);
            if (log.scheme == Scheme::symmetric_pair)
                frozen_jump(ev.j, vj, vi, ri, ev, partner_azimuth(ev.phi), rec.pair_majorant);
            if (ev.accepted)
                apply_event(state, log.scheme, ev);
        }
        state.finish(rec.t_start + rec.dt);
        e.t = rec.t_start + rec.dt;
    }
    out.actual.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        out.actual[k] = e.particles[k].v;
    return out;
}

Vec3 frozen_copy(Ensemble const& e_prev,
                 EventLog const& log,
                 CollisionKernel const& kernel,
                 double t,
                 std::size_t tracked)
{
    return frozen_copies(e_prev, log, kernel, t).frozen.at(tracked);
}

//---------------------------------------------------------------------------//
double integrate(Ensemble const& e, std::function<double(ParticleState const&)> const& f)
{
    double s = 0;
    for (auto const& p : e.particles)
        s += f(p);
    return s * e.weight();
}

Vec3 integrate_vec(Ensemble const& e, std::function<Vec3(ParticleState const&)> const& f)
{
    Vec3 s{};
    for (auto const& p : e.particles)
        s += f(p);
    return s * e.weight();
}

//---------------------------------------------------------------------------//
void write_snapshots_csv(std::string const& path, std::vector<Ensemble> const& snapshots)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path);
    os << "t,particle_id,rx,ry,rz,vx,vy,vz\n" << std::setprecision(17);
    for (auto const& s : snapshots)
    {
        for (std::size_t k = 0; k < s.size(); ++k)
        {
            auto const& p = s.particles[k];
            os << s.t << ',' << k << ',' << p.r.x << ',' << p.r.y << ',' << p.r.z << ','
               << p.v.x << ',' << p.v.y << ',' << p.v.z << '\n';
        }
    }
}

std::vector<Ensemble> read_snapshots_csv(std::string const& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(is, line);
    std::vector<Ensemble> out;
    while (std::getline(is, line))
    {
        std::istringstream ls(line);
        std::string tok;
        double vals[8];
        for (double& v : vals)
        {
            std::getline(ls, tok, ',');
            v = std::stod(tok);
        }
        if (out.empty() || out.back().t != vals[0])
        {
            out.emplace_back();
            out.back().t = vals[0];
        }
        out.back().particles.push_back(
            {{vals[2], vals[3], vals[4]}, {vals[5], vals[6], vals[7]}});
    }
    return out;
}

void write_events_csv(std::string const& path, EventLog const& log)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path);
    os << "time,i,j,theta,phi,z\n" << std::setprecision(17);
    for (auto const& ev : log.events)
    {
        if (!ev.accepted)
            continue;
        os << ev.time << ',' << ev.i << ',' << ev.j << ',' << ev.theta << ',' << ev.phi << ','
           << ev.z_uniform << '\n';
    }
}

std::vector<CollisionEvent> read_events_csv(std::string const& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(is, line);
    std::vector<CollisionEvent> out;
    while (std::getline(is, line))
    {
        std::istringstream ls(line);
        std::string tok;
        CollisionEvent ev;
        std::getline(ls, tok, ',');
        ev.time = std::stod(tok);
        std::getline(ls, tok, ',');
        ev.i = static_cast<std::uint32_t>(std::stoul(tok));
        std::getline(ls, tok, ',');
        ev.j = static_cast<std::uint32_t>(std::stoul(tok));
        std::getline(ls, tok, ',');
        ev.theta = std::stod(tok);
        std::getline(ls, tok, ',');
        ev.phi = std::stod(tok);
        std::getline(ls, tok, ',');
        ev.z_uniform = std::stod(tok);
        out.push_back(ev);
    }
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace enskog
