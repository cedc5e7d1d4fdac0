//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file workflows.cpp
//---------------------------------------------------------------------------//
#include "enskog/workflows.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

#include "enskog/besov.hpp"
#include "enskog/charfn.hpp"
#include "enskog/observables.hpp"
#include "enskog/parallel.hpp"
#include "enskog/rng.hpp"

#ifndef ENSKOG_VERSION
#    define ENSKOG_VERSION "0.0.0"
#endif

namespace enskog
{
namespace
{
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

//---------------------------------------------------------------------------//
//! Shared state of one orchestrated run
struct Context
{
    RunConfig const& cfg;
    std::ostream* log;
    fs::path out;
    RunReport report;
    json extra = json::object();

    void note(std::string const& msg) const
    {
        if (log)
            *log << "[" << to_string(cfg.workflow) << "] " << msg << std::endl;
    }

    std::string path(std::string const& name) const { return (out / name).string(); }

    void wrote(std::string const& name)
    {
        auto const p = out / name;
        report.files.push_back({name, sha256_file(p.string()), fs::file_size(p)});
    }

    void check(std::string name, bool passed, std::string detail)
    {
        note((passed ? "PASS " : "FAIL ") + name + ": " + detail);
        report.checks.push_back({std::move(name), passed, std::move(detail)});
    }

    void warn(std::string const& w)
    {
        note("warning: " + w);
        report.warnings.push_back(w);
    }
};

std::ofstream open_csv(std::string const& path)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path);
    os << std::setprecision(17);
    return os;
}

std::string num(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

bool near_time(double a, double b)
{
    return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b));
}

//! Snap t onto the dt grid
double on_grid(double t, double dt)
{
    return std::round(t / dt) * dt;
}

void add_times(SimConfig& sim, std::vector<double> const& times)
{
    for (double t : times)
    {
        double const g = on_grid(t, sim.dt);
        if (std::none_of(sim.snapshot_times.begin(), sim.snapshot_times.end(),
                         [&](double s) { return near_time(s, g); }))
            sim.snapshot_times.push_back(g);
    }
    std::sort(sim.snapshot_times.begin(), sim.snapshot_times.end());
}

Trajectory simulate(Context& ctx, SimConfig const& sim)
{
    auto traj = run(sim);
    for (auto const& w : traj.warnings)
        ctx.warn(w);
    return traj;
}

std::vector<Vec3> velocities(Ensemble const& e)
{
    std::vector<Vec3> v;
    v.reserve(e.size());
    for (auto const& p : e.particles)
        v.push_back(p.v);
    return v;
}

//---------------------------------------------------------------------------//
void run_workflow(Context& ctx)
{
    auto const& cfg = ctx.cfg;
    auto const has = [&](char const* o) {
        return std::find(cfg.observables.begin(), cfg.observables.end(), o)
               != cfg.observables.end();
    };
    bool const weak = has("weak_form");

    SimConfig sim = cfg.sim;
    add_times(sim, cfg.checkpoints);
    if (weak)
    {
        std::vector<double> after;
        for (double t : cfg.checkpoints)
        {
            if (on_grid(t, sim.dt) + sim.dt <= sim.t_end * (1 + 1e-12))
                after.push_back(on_grid(t, sim.dt) + sim.dt);
        }
        add_times(sim, after);
    }

    ctx.note("simulating " + std::to_string(sim.n_particles) + " particles to t = "
             + num(sim.t_end));
    auto const traj = simulate(ctx, sim);

    write_snapshots_csv(ctx.path("snapshots.csv"), traj.snapshots);
    ctx.wrote("snapshots.csv");
    if (sim.record_events)
    {
        write_events_csv(ctx.path("events.csv"), traj.log);
        ctx.wrote("events.csv");
    }

    std::vector<ObservableRow> rows;
    auto const& first = traj.snapshots.front();
    auto const q0 = conserved_quantities(first);
    double max_dp = 0, max_de = 0;
    bool finite = true;
    for (auto const& s : traj.snapshots)
    {
        auto const q = conserved_quantities(s);
        max_dp = std::max(max_dp, norm(q.momentum - q0.momentum));
        max_de = std::max(max_de, std::fabs(q.energy - q0.energy) / std::max(q0.energy, 1e-300));
        if (has("conserved"))
        {
            rows.push_back({"mass", s.t, q.mass, 0});
            rows.push_back({"momentum_x", s.t, q.momentum.x, 0});
            rows.push_back({"momentum_y", s.t, q.momentum.y, 0});
            rows.push_back({"momentum_z", s.t, q.momentum.z, 0});
            rows.push_back({"energy", s.t, q.energy, 0});
        }
        if (has("moments"))
        {
            for (double p : cfg.moment_orders)
            {
                double const m = moment(s, p);
                finite = finite && std::isfinite(m);
                rows.push_back({"moment_" + num(p), s.t, m, 0});
            }
        }
    }

    if (weak)
    {
        std::vector<TestFunction> bank;
        for (auto& f : default_test_bank())
        {
            if (std::find(cfg.test_bank.begin(), cfg.test_bank.end(), f.name)
                != cfg.test_bank.end())
                bank.push_back(std::move(f));
        }
        for (double t : cfg.checkpoints)
        {
            double const g = on_grid(t, sim.dt);
            if (g + sim.dt > sim.t_end * (1 + 1e-12))
            {
                ctx.warn("no weak-form residual at t = " + num(t) + ": needs t + dt <= t_end");
                continue;
            }
            for (auto const& r : weak_form_residual(nullptr, traj.at(g), traj.at(g + sim.dt),
                                                    bank, sim.kernel, {}, sim.threads))
                rows.push_back({"residual_" + r.name, r.t, r.residual, 0});
        }
    }
    write_observables_csv(ctx.path("observables.csv"), rows);
    ctx.wrote("observables.csv");

    if (sim.scheme == Scheme::symmetric_pair)
    {
        double const speed = std::sqrt(std::max(q0.energy, 1e-300));
        ctx.check("conservation_momentum", max_dp <= 1e-12 * speed,
                  "max |P(t) - P(0)| = " + num(max_dp) + " against rounding scale "
                      + num(1e-12 * speed));
        ctx.check("conservation_energy", max_de < 1e-10,
                  "max relative energy drift = " + num(max_de) + " (< 1e-10)");
    }
    if (has("moments"))
        ctx.check("moments_finite", finite, finite ? "all moments finite" : "non-finite moment");
}

//---------------------------------------------------------------------------//
void coupling_workflow(Context& ctx)
{
    auto const& cfg = ctx.cfg;
    double const t = on_grid(cfg.coupling_time(), cfg.sim.dt);
    double const eps_max = *std::max_element(cfg.coupling_eps.begin(), cfg.coupling_eps.end());

    SimConfig base = cfg.sim;
    base.t_end = t;
    base.threads = 1;
    base.snapshot_every = 0;
    base.snapshot_times.clear();
    std::vector<double> starts;
    for (double e : cfg.coupling_eps)
        starts.push_back(t - e);
    add_times(base, starts);
    base.record_events = true;
    base.record_rejected_from = on_grid(t - eps_max, base.dt) - 0.5 * base.dt;

    ctx.note("coupling: " + std::to_string(cfg.coupling_seeds) + " seeds of "
             + std::to_string(base.n_particles) + " particles, t = " + num(t));
    std::size_t const nq = cfg.coupling_eps.size();
    std::vector<std::vector<double>> samples(nq, std::vector<double>(cfg.coupling_seeds));
    std::vector<std::vector<std::string>> warnings(cfg.coupling_seeds);
    parallel_for(cfg.coupling_seeds, cfg.sim.threads, [&](std::size_t s) {
        SimConfig sim = base;
        sim.seed = replicate_seed(cfg.sim.seed, s);
        auto const traj = run(sim);
        warnings[s] = traj.warnings;
        for (std::size_t q = 0; q < nq; ++q)
        {
            double const e = std::round(cfg.coupling_eps[q] / base.dt) * base.dt;
            samples[q][s] = coupling_sample(traj, sim.kernel, t, e);
        }
    });
    for (std::size_t s = 0; s < warnings.size(); ++s)
        for (auto const& w : warnings[s])
            ctx.warn("seed " + std::to_string(s) + ": " + w);

    auto const table = coupling_error(cfg.coupling_eps, samples);
    for (auto const& w : table.warnings)
        ctx.warn(w);
    {
        auto os = open_csv(ctx.path("coupling.csv"));
        os << "eps,mean,stderr\n";
        for (auto const& r : table.rows)
            os << r.eps << ',' << r.mean << ',' << r.stderr_ << '\n';
        os << std::flush;
    }
    ctx.wrote("coupling.csv");

    json c = json::object();
    c["t"] = t;
    c["predicted_exponent"] = coupling_exponent(cfg.sim.kernel.cross.gamma);
    if (table.fit)
    {
        c["slope"] = table.fit->slope;
        c["slope_stderr"] = table.fit->slope_stderr;
        bool const ok = table.fit->slope >= cfg.coupling_min_slope;
        ctx.check("coupling_rate",
                  ok,
                  "frozen-process coupling slope " + num(table.fit->slope) + " +- "
                      + num(table.fit->slope_stderr) + (ok ? " >= " : " < ")
                      + num(cfg.coupling_min_slope) + " (predicted "
                      + num(coupling_exponent(cfg.sim.kernel.cross.gamma)) + ")");
    }
    else
    {
        c["slope"] = nullptr;
        ctx.check("coupling_rate", false, "slope undefined: some window has no coupling error");
    }
    ctx.extra["coupling"] = c;
}

//---------------------------------------------------------------------------//
void charfn_workflow(Context& ctx)
{
    auto const& cfg = ctx.cfg;
    double const dt = cfg.sim.dt;
    double const t = on_grid(cfg.charfn_time(), dt);
    double const eps = std::round(cfg.charfn_eps / dt) * dt;
    double const t0 = t - eps;

    SimConfig sim = cfg.sim;
    sim.t_end = t;
    sim.snapshot_every = 0;
    sim.snapshot_times.clear();
    std::vector<double> window;
    for (double s = t0; s <= t + 0.5 * dt; s += dt)
        window.push_back(s);
    add_times(sim, window);

    ctx.note("charfn: window [" + num(t0) + ", " + num(t) + "] with "
             + std::to_string(sim.n_particles) + " particles");
    auto const traj = simulate(ctx, sim);
    auto const copies = copies_from_trajectory(traj, t0, t, cfg.charfn_tracked);
    auto const& tracked = traj.at(t0).particles.at(cfg.charfn_tracked);

    CharExponentQuery q;
    q.eps = eps;
    q.t = t;
    q.v0 = tracked.v;
    q.r0 = tracked.r;

    CharfnOptions opt;
    opt.theta_floor = cfg.charfn_theta_floor;
    opt.threads = cfg.sim.threads;

    std::vector<Vec3> const dirs = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, (1 / std::sqrt(3.0)) * Vec3{1, 1, 1}};
    std::vector<Vec3> grid;
    for (double m : cfg.charfn_kappa)
        for (auto const& d : dirs)
            grid.push_back(m * d);
    auto const lb = lower_bound_check(q, grid, copies, sim.kernel, opt);

    {
        auto os = open_csv(ctx.path("charfn.csv"));
        os << "eps,t,|kappa|,re_psi,im_psi,bound_value,kx,ky,kz\n";
        for (auto const& r : lb.rows)
            os << eps << ',' << t << ',' << norm(r.kappa) << ',' << r.re_psi << ','
               << r.im_psi << ',' << lb.c * r.shape << ',' << r.kappa.x << ',' << r.kappa.y
               << ',' << r.kappa.z << '\n';
        os << std::flush;
    }
    ctx.wrote("charfn.csv");

    json c = json::object();
    c["eps"] = eps;
    c["t"] = t;
    c["tracked"] = cfg.charfn_tracked;
    c["lower_bound_c"] = lb.c;
    ctx.check("charfn_lower_bound", lb.passed,
              "Re psi(eps^{-1/nu} kappa) >= c min(|kappa|^2, |kappa|^nu) with c = "
                  + num(lb.c));
    if (lb.passed)
    {
        auto const gb = grad_density_bound(q, copies, sim.kernel, opt);
        c["grad_density_bound"] = gb.value;
        c["m1"] = gb.moments.m1;
        c["m4"] = gb.moments.m4;
        c["grad_tail_constant"] = gb.c_tail;
        c["grad_tail"] = gb.tail;
        c["grad_integral"] = gb.integral;
        ctx.check("charfn_grad_bound_finite", std::isfinite(gb.value),
                  "density gradient bound " + num(gb.value));
    }
    ctx.extra["charfn"] = c;
}

//---------------------------------------------------------------------------//
std::vector<Vec3> final_velocities(Context& ctx, SimConfig sim, double t, std::uint64_t seed)
{
    sim.seed = seed;
    sim.t_end = t;
    sim.snapshot_times.clear();
    sim.snapshot_every = 0;
    sim.record_events = false;
    auto const traj = simulate(ctx, sim);
    return velocities(traj.snapshots.back());
}

void besov_workflow(Context& ctx)
{
    auto const& cfg = ctx.cfg;
    double const gamma = cfg.sim.kernel.cross.gamma;
    double const nu = cfg.sim.kernel.angular.nu;
    auto const iv = admissible_c_interval(gamma, nu);
    double const a = cfg.besov_a > 0 ? cfg.besov_a : default_besov_a(gamma, nu, cfg.hol_alpha);
    double const t = on_grid(cfg.besov_time(), cfg.sim.dt);

    auto const grid = default_h_grid();
    auto const bank = default_holder_bank(cfg.hol_alpha);
    BesovOptions bo;
    bo.gamma = gamma;
    bo.nu = nu;
    bo.threads = cfg.sim.threads;

    std::vector<Vec3> sample;
    std::vector<double> partial_kappa;
    for (std::size_t r = 0; r < cfg.besov_runs; ++r)
    {
        ctx.note("besov: run " + std::to_string(r + 1) + " of " + std::to_string(cfg.besov_runs));
        auto const v = final_velocities(ctx, cfg.sim, t, replicate_seed(cfg.sim.seed, r));
        sample.insert(sample.end(), v.begin(), v.end());
        if (r + 1 < cfg.besov_runs)
            partial_kappa.push_back(
                besov_estimate(sample, cfg.hol_alpha, a, grid, bank, bo).kappa_hat);
    }
    auto const est = besov_estimate(sample, cfg.hol_alpha, a, grid, bank, bo);

    {
        auto os = open_csv(ctx.path("besov.csv"));
        os << "phi_id,|h|,I,ratio,mc_stderr,hx,hy,hz\n";
        for (auto const& r : est.rows)
            os << r.phi_id << ',' << r.h_norm << ',' << r.value << ',' << r.ratio << ','
               << r.mc_stderr << ',' << r.h.x << ',' << r.h.y << ',' << r.h.z << '\n';
        os << std::flush;
    }
    ctx.wrote("besov.csv");

    Box box;
    double const w = cfg.kde_half_width;
    box.lo = {-w, -w, -w};
    box.hi = {w, w, w};
    auto const field
        = kde_density(sample, silverman_bandwidth(sample), box, cfg.kde_resolution, bo.threads);
    write_density_csv(ctx.path("density.csv"), field);
    ctx.wrote("density.csv");

    json b = json::object();
    b["kappa_hat"] = est.kappa_hat;
    b["a"] = est.a;
    b["hol_alpha"] = est.hol_alpha;
    b["admissible_c_interval"] = {iv.lo, iv.hi};
    b["c"] = est.c;
    b["sample_size"] = sample.size();
    b["kappa_hat_partial"] = partial_kappa;
    b["kde_bandwidth"] = field.bandwidth;
    b["in_box_fraction"] = in_box_fraction(sample, box);
    ctx.extra["besov"] = b;

    ctx.check("besov_kappa_hat_finite", std::isfinite(est.kappa_hat),
              "kappa_hat = " + num(est.kappa_hat) + " at a = " + num(a) + ", n = "
                  + std::to_string(sample.size()));
    if (!partial_kappa.empty())
    {
        double const first = partial_kappa.front();
        double const rel = std::fabs(est.kappa_hat - first) / first;
        ctx.check("besov_kappa_hat_stable", rel <= 0.2,
                  "kappa_hat " + num(first) + " -> " + num(est.kappa_hat)
                      + " when the sample grows " + std::to_string(sample.size() / cfg.besov_runs)
                      + " -> " + std::to_string(sample.size()) + " (relative change "
                      + num(rel) + ", limit 0.2)");
    }
}

//---------------------------------------------------------------------------//
void support_workflow(Context& ctx)
{
    auto const& cfg = ctx.cfg;
    double const t = on_grid(cfg.support_time(), cfg.sim.dt);
    SimConfig sim = cfg.sim;
    sim.t_end = t;
    sim.snapshot_times.clear();
    sim.snapshot_every = 0;
    sim.record_events = false;
    ctx.note("support: " + std::to_string(sim.n_particles) + " particles to t = " + num(t));
    auto const traj = simulate(ctx, sim);
    auto const& start = traj.snapshots.front();
    auto const& end = traj.snapshots.back();

    auto const centers = sphere_grid_26(cfg.support_sphere);
    auto const m0 = support_coverage(start, centers, cfg.support_radius);
    auto const m1 = support_coverage(end, centers, cfg.support_radius);

    auto const& k = sim.kernel;
    double const m = cfg.cone_m > 0 ? cfg.cone_m : k.cross.c_sigma;
    double const m_beta = cfg.cone_m_beta > 0 ? cfg.cone_m_beta : 0.5 * k.mollifier.amplitude;
    Vec3 r0{};
    for (auto const& p : end.particles)
        r0 = r0 + p.r;
    r0 = (1.0 / static_cast<double>(end.size())) * r0;

    std::vector<Vec3> const us = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    std::vector<Vec3> const xis = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    struct ConeRow
    {
        ConeSet cone;
        double mass, joint;
    };
    std::vector<ConeRow> cones;
    for (auto const& u : us)
        for (auto const& xi : xis)
        {
            ConeSet c{u, xi, m};
            cones.push_back({c, cone_mass(end, c, k.cross),
                             cone_mass_joint(end, c, k.cross, k.mollifier, r0, m_beta)});
        }

    {
        auto os = open_csv(ctx.path("support.csv"));
        os << "set,index,cx,cy,cz,radius,mass_initial,mass\n";
        for (std::size_t i = 0; i < centers.size(); ++i)
            os << "ball," << i << ',' << centers[i].x << ',' << centers[i].y << ','
               << centers[i].z << ',' << cfg.support_radius << ',' << m0[i] << ',' << m1[i]
               << '\n';
        os << std::flush;
    }
    ctx.wrote("support.csv");
    {
        auto os = open_csv(ctx.path("cones.csv"));
        os << "ux,uy,uz,xix,xiy,xiz,m,m_beta,cone_mass,joint_mass\n";
        for (auto const& c : cones)
            os << c.cone.u.x << ',' << c.cone.u.y << ',' << c.cone.u.z << ',' << c.cone.xi.x
               << ',' << c.cone.xi.y << ',' << c.cone.xi.z << ',' << m << ',' << m_beta << ','
               << c.mass << ',' << c.joint << '\n';
        os << std::flush;
    }
    ctx.wrote("cones.csv");

    auto const min_ball = *std::min_element(m1.begin(), m1.end());
    auto const empty0 = std::count(m0.begin(), m0.end(), 0.0);
    ctx.check("support_balls", min_ball > 0,
              "smallest ball mass " + num(min_ball) + " over " + std::to_string(centers.size())
                  + " balls (" + std::to_string(empty0) + " empty initially)");
    double min_joint = cones.front().joint;
    for (auto const& c : cones)
        min_joint = std::min(min_joint, c.joint);
    ctx.check("support_cones", min_joint > 0,
              "smallest joint cone mass " + num(min_joint) + " over "
                  + std::to_string(cones.size()) + " cones");
}

//---------------------------------------------------------------------------//
std::string utc_now()
{
    auto const now = std::chrono::system_clock::now();
    std::time_t const tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json checks_json(std::vector<CheckRecord> const& checks)
{
    json a = json::array();
    for (auto const& c : checks)
        a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return a;
}

char const* status_name(int code)
{
    return code == exit_pass ? "pass" : code == exit_check_failed ? "fail" : "error";
}

void write_json(fs::path const& p, json const& j)
{
    std::ofstream os(p);
    if (!os)
        throw std::runtime_error("cannot open " + p.string());
    os << j.dump(2) << '\n';
    if (!os)
        throw std::runtime_error("failed writing " + p.string());
}

}  // namespace

//---------------------------------------------------------------------------//
char const* code_version()
{
    return ENSKOG_VERSION;
}

std::string sha256_file(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    EVP_MD_CTX* md = EVP_MD_CTX_new();
    EVP_DigestInit_ex(md, EVP_sha256(), nullptr);
    std::vector<char> buf(1 << 16);
    while (in)
    {
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        EVP_DigestUpdate(md, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    EVP_DigestFinal_ex(md, digest, &len);
    EVP_MD_CTX_free(md);
    std::ostringstream os;
    for (unsigned i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t k)
{
    return CounterRng(seed, StreamPurpose::replicate, k).next_u64();
}

//---------------------------------------------------------------------------//
RunReport orchestrate(RunConfig const& cfg, std::ostream* log)
{
    auto const t_start = std::chrono::steady_clock::now();
    std::string const started = utc_now();

    Context ctx{cfg, log, fs::path(cfg.out_dir), {}};
    try
    {
        auto const errs = validate(cfg);
        if (!errs.empty())
            throw ConfigError(errs);
        for (auto const& w : config_warnings(cfg))
            ctx.warn(w);
        fs::create_directories(ctx.out);
        for (auto const* stale : {"manifest.json", "verdict.json"})
            fs::remove(ctx.out / stale);

        switch (cfg.workflow)
        {
            case Workflow::run:
                run_workflow(ctx);
                break;
            case Workflow::coupling:
                coupling_workflow(ctx);
                break;
            case Workflow::charfn:
                charfn_workflow(ctx);
                break;
            case Workflow::besov:
                besov_workflow(ctx);
                break;
            case Workflow::support:
                support_workflow(ctx);
                break;
        }
        bool const all = std::all_of(ctx.report.checks.begin(), ctx.report.checks.end(),
                                     [](auto const& c) { return c.passed; });
        ctx.report.exit_code = all ? exit_pass : exit_check_failed;
    }
    catch (std::exception const& e)
    {
        ctx.report.exit_code = exit_runtime_error;
        ctx.report.error = std::string("workflow '") + to_string(cfg.workflow) + "': " + e.what();
        ctx.note("error: " + ctx.report.error);
    }

    try
    {
        fs::create_directories(ctx.out);

        json verdict = json::object();
        verdict["workflow"] = to_string(cfg.workflow);
        verdict["status"] = status_name(ctx.report.exit_code);
        verdict["exit_code"] = ctx.report.exit_code;
        verdict["checks"] = checks_json(ctx.report.checks);
        for (auto const& [k, v] : ctx.extra.items())
            verdict[k] = v;
        verdict["warnings"] = ctx.report.warnings;
        if (!ctx.report.error.empty())
            verdict["error"] = ctx.report.error;
        write_json(ctx.out / "verdict.json", verdict);
        ctx.wrote("verdict.json");

        json config = json::object();
        for (auto const& [k, v] : config_entries(cfg, true))
            config[k] = v;
        json files = json::array();
        for (auto const& f : ctx.report.files)
            files.push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});

        json manifest = json::object();
        manifest["reproducible"] = {
            {"version", code_version()},
            {"workflow", to_string(cfg.workflow)},
            {"seed", cfg.sim.seed},
            {"config", config},
            {"status", status_name(ctx.report.exit_code)},
            {"exit_code", ctx.report.exit_code},
            {"checks", checks_json(ctx.report.checks)},
            {"warnings", ctx.report.warnings},
            {"error", ctx.report.error},
            {"files", files},
        };
        double const wall
            = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        manifest["execution"] = {
            {"threads", cfg.sim.threads},
            {"out_dir", cfg.out_dir},
            {"start_time", started},
            {"end_time", utc_now()},
            {"wall_seconds", wall},
        };
        write_json(ctx.out / "manifest.json", manifest);
    }
    catch (std::exception const& e)
    {
        ctx.report.exit_code = exit_runtime_error;
        if (ctx.report.error.empty())
            ctx.report.error = std::string("writing outputs: ") + e.what();
        ctx.note("error: " + std::string(e.what()));
    }
    return ctx.report;
}

//---------------------------------------------------------------------------//
}  // namespace enskog
