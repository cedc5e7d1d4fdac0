//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file observables.cpp
//---------------------------------------------------------------------------//
#include "enskog/observables.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "enskog/parallel.hpp"
#include "enskog/vecgeom.hpp"

namespace enskog
{
namespace
{
constexpr double pi = std::numbers::pi;

struct AngularRule
{
    std::vector<double> weight;  // includes the density b theta^(-1-nu)
    std::vector<double> half_sin2;  // sin^2(theta/2)
    std::vector<double> half_sin;  // sin(theta)/2
};

//! Composite 8-point Gauss-Legendre in log(theta) on [theta_min, pi]
AngularRule make_angular_rule(AngularMeasure const& q, int panels)
{
    using gl = boost::math::quadrature::gauss<double, 8>;
    auto const& x = gl::abscissa();
    auto const& w = gl::weights();
    double const a = std::log(q.theta_min);
    double const b = std::log(pi);
    double const h = (b - a) / panels;
    AngularRule rule;
    auto push = [&](double s, double wt) {
        double const th = std::exp(s);
        rule.weight.push_back(wt * q.b_coeff * std::pow(th, -q.nu));
        double const sh = std::sin(th / 2);
        rule.half_sin2.push_back(sh * sh);
        rule.half_sin.push_back(std::sin(th) / 2);
    };
    for (int p = 0; p < panels; ++p)
    {
        double const mid = a + (p + 0.5) * h;
        for (std::size_t k = 0; k < x.size(); ++k)
        {
            push(mid + 0.5 * h * x[k], 0.5 * h * w[k]);
            if (x[k] != 0)
                push(mid - 0.5 * h * x[k], 0.5 * h * w[k]);
        }
    }
    return rule;
}

struct PhiRule
{
    std::vector<double> c;
    std::vector<double> s;
    double weight{0};
};

PhiRule make_phi_rule(int n)
{
    PhiRule r;
    for (int k = 0; k < n; ++k)
    {
        double const ph = 2 * pi * k / n;
        r.c.push_back(std::cos(ph));
        r.s.push_back(std::sin(ph));
    }
    r.weight = 2 * pi / n;
    return r;
}

struct CollisionIntegral
{
    double value{0};
    double magnitude{0};
};

//! int int (psi(r, v + alpha(v,u)) - psi(r, v)) dphi Q(dtheta)
CollisionIntegral collision_integral(TestFunction const& psi,
                                     Vec3 const& r,
                                     Vec3 const& v,
                                     Vec3 const& u,
                                     AngularRule const& ar,
                                     PhiRule const& pr)
{
    CollisionIntegral out;
    Vec3 const rel = u - v;
    if (norm2(rel) == 0)
        return out;
    auto const frame = build_frame(rel);
    double const base = psi.value(r, v);
    for (std::size_t k = 0; k < ar.weight.size(); ++k)
    {
        Vec3 const drift = ar.half_sin2[k] * rel;
        double inner = 0, inner_abs = 0;
        for (std::size_t l = 0; l < pr.c.size(); ++l)
        {
            Vec3 const a = drift + ar.half_sin[k] * (pr.c[l] * frame.i_vec + pr.s[l] * frame.j_vec);
            double const d = psi.value(r, v + a) - base;
            inner += d;
            inner_abs += std::fabs(d);
        }
        out.value += ar.weight[k] * pr.weight * inner;
        out.magnitude += ar.weight[k] * pr.weight * inner_abs;
    }
    return out;
}

double smooth_tail(double x)
{
    return x > 0 ? std::exp(-1 / x) : 0;
}
double smooth_tail_derivative(double x)
{
    return x > 0 ? std::exp(-1 / x) / (x * x) : 0;
}
}  // namespace

//---------------------------------------------------------------------------//
ConservedQuantities conserved_quantities(Ensemble const& e)
{
    ConservedQuantities c;
    double const w = e.weight();
    for (auto const& p : e.particles)
    {
        c.mass += w;
        c.momentum += w * p.v;
        c.energy += w * norm2(p.v);
    }
    return c;
}

double moment(Ensemble const& e, double p)
{
    return integrate(e, [p](ParticleState const& q) { return std::pow(norm(q.v), p); });
}

MomentSeries moment_series(std::vector<Ensemble> const& snapshots, double p)
{
    MomentSeries s;
    s.order = p;
    for (auto const& e : snapshots)
    {
        s.t.push_back(e.t);
        s.value.push_back(moment(e, p));
    }
    return s;
}

LinearFit moment_growth_fit(MomentSeries const& s, double discard_fraction)
{
    if (s.t.empty())
        throw std::invalid_argument("moment_growth_fit: empty series");
    double const t_max = *std::max_element(s.t.begin(), s.t.end());
    std::vector<double> t, v;
    for (std::size_t k = 0; k < s.t.size(); ++k)
    {
        if (!std::isfinite(s.value[k]))
            throw std::domain_error("moment_growth_fit: non-finite moment");
        if (s.t[k] > discard_fraction * t_max && s.t[k] > 0)
        {
            t.push_back(s.t[k]);
            v.push_back(s.value[k]);
        }
    }
    return loglog_fit(t, v);
}

double moment_growth_exponent(double p, double gamma)
{
    return 2 * p / (2 - gamma);
}

//---------------------------------------------------------------------------//
double coupling_exponent(double gamma)
{
    return 1 + std::min(gamma, 1.0) / (gamma + 1);
}

double coupling_sample(Trajectory const& traj, CollisionKernel const& kernel, double t, double eps)
{
    auto const fc = frozen_copies(traj.at(t - eps), traj.log, kernel, t);
    double s = 0;
    for (std::size_t k = 0; k < fc.actual.size(); ++k)
        s += norm(fc.actual[k] - fc.frozen[k]);
    return s / static_cast<double>(fc.actual.size());
}

CouplingTable coupling_error(std::vector<double> const& eps,
                             std::vector<std::vector<double>> const& samples)
{
    if (eps.size() != samples.size())
        throw std::invalid_argument("coupling_error: eps grid and samples differ in size");
    CouplingTable table;
    bool all_positive = true;
    for (std::size_t q = 0; q < eps.size(); ++q)
    {
        auto const m = mean_estimate(samples[q]);
        table.rows.push_back({eps[q], m.mean, m.stderr_});
        if (!(m.mean > 0))
        {
            all_positive = false;
            std::ostringstream os;
            os << "slope undefined: no coupling error at eps = " << eps[q];
            table.warnings.push_back(os.str());
        }
        else if (m.stderr_ > 0.3 * m.mean)
        {
            std::ostringstream os;
            os << "insufficient samples: standard error above 30% of the mean at eps = " << eps[q];
            table.warnings.push_back(os.str());
        }
    }
    if (all_positive && eps.size() >= 2)
    {
        std::vector<double> m;
        for (auto const& r : table.rows)
            m.push_back(r.mean);
        table.fit = loglog_fit(eps, m);
    }
    return table;
}

//---------------------------------------------------------------------------//
std::vector<Vec3> sphere_grid_26(double radius)
{
    std::vector<Vec3> out;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            for (int c = -1; c <= 1; ++c)
            {
                if (a == 0 && b == 0 && c == 0)
                    continue;
                Vec3 d{double(a), double(b), double(c)};
                out.push_back((radius / norm(d)) * d);
            }
    return out;
}

std::vector<double> support_coverage(Ensemble const& e,
                                     std::vector<Vec3> const& centers,
                                     double radius)
{
    std::vector<double> mass(centers.size(), 0);
    double const r2 = radius * radius;
    for (auto const& p : e.particles)
    {
        for (std::size_t c = 0; c < centers.size(); ++c)
        {
            if (norm2(p.v - centers[c]) < r2)
                mass[c] += 1;
        }
    }
    for (auto& m : mass)
        m *= e.weight();
    return mass;
}

bool in_cone(ConeSet const& cone, CrossSection const& cs, Vec3 const& v)
{
    Vec3 const d = v - cone.u;
    double const dn = norm(d);
    return norm(v) <= 3 && dn >= 1 && sigma_rate(cs, dn) >= cone.m
           && std::fabs(dot(d, cone.xi)) >= norm(cone.xi);
}

double cone_mass(Ensemble const& e, ConeSet const& cone, CrossSection const& cs)
{
    return integrate(e, [&](ParticleState const& p) { return in_cone(cone, cs, p.v) ? 1.0 : 0.0; });
}

double cone_mass_joint(Ensemble const& e,
                       ConeSet const& cone,
                       CrossSection const& cs,
                       SpatialMollifier const& mollifier,
                       Vec3 const& r0,
                       double m_beta)
{
    return integrate(e, [&](ParticleState const& p) {
        return in_cone(cone, cs, p.v) && beta_weight(mollifier, p.r - r0) >= m_beta ? 1.0 : 0.0;
    });
}

//---------------------------------------------------------------------------//
double plateau_cutoff(double s)
{
    if (s <= 1)
        return 1;
    if (s >= 2)
        return 0;
    double const a = smooth_tail(2 - s);
    double const b = smooth_tail(s - 1);
    return a / (a + b);
}

double plateau_cutoff_derivative(double s)
{
    if (s <= 1 || s >= 2)
        return 0;
    double const a = smooth_tail(2 - s);
    double const b = smooth_tail(s - 1);
    double const da = -smooth_tail_derivative(2 - s);
    double const db = smooth_tail_derivative(s - 1);
    return (da * b - a * db) / ((a + b) * (a + b));
}

std::vector<TestFunction> default_test_bank(TestBankOptions const& opt)
{
    std::vector<TestFunction> bank;
    Vec3 const zero{};
    bank.push_back({"one", [](Vec3 const&, Vec3 const&) { return 1.0; },
                    [zero](Vec3 const&, Vec3 const&) { return zero; }, false});
    bank.push_back({"r1", [](Vec3 const& r, Vec3 const&) { return r.x; },
                    [](Vec3 const&, Vec3 const&) { return Vec3{1, 0, 0}; }, false});
    bank.push_back({"v1", [](Vec3 const&, Vec3 const& v) { return v.x; },
                    [zero](Vec3 const&, Vec3 const&) { return zero; }, true});

    double const rho = opt.bump_radius;
    bank.push_back({"v_bump",
                    [rho](Vec3 const&, Vec3 const& v) {
                        double const s = norm2(v) / (rho * rho);
                        return s < 1 ? std::exp(1 - 1 / (1 - s)) : 0.0;
                    },
                    [zero](Vec3 const&, Vec3 const&) { return zero; }, true});

    double const rc = opt.r_cut, vc = opt.v_cut;
    bank.push_back({"rv_trunc",
                    [rc, vc](Vec3 const& r, Vec3 const& v) {
                        return dot(r, v) * plateau_cutoff(norm(r) / rc) * plateau_cutoff(norm(v) / vc);
                    },
                    [rc, vc](Vec3 const& r, Vec3 const& v) {
                        double const chi_v = plateau_cutoff(norm(v) / vc);
                        if (chi_v == 0)
                            return Vec3{};
                        double const lr = norm(r);
                        Vec3 g = plateau_cutoff(lr / rc) * v;
                        if (lr > 0)
                            g += (dot(r, v) * plateau_cutoff_derivative(lr / rc) / (rc * lr)) * r;
                        return chi_v * g;
                    },
                    true});
    return bank;
}

//---------------------------------------------------------------------------//
double generator_expectation(Ensemble const& e,
                             TestFunction const& psi,
                             CollisionKernel const& kernel,
                             GeneratorQuadrature const& quad,
                             unsigned threads)
{
    std::size_t const n = e.size();
    double transport = 0;
    for (auto const& p : e.particles)
        transport += dot(p.v, psi.grad_r(p.r, p.v));
    transport /= static_cast<double>(n);
    if (!psi.depends_on_velocity)
        return transport;

    auto const ar = make_angular_rule(kernel.angular, quad.theta_panels);
    auto const pr = make_phi_rule(quad.phi_nodes);

    // refinement check on a few interacting pairs
    auto const ar2 = make_angular_rule(kernel.angular, 2 * quad.theta_panels);
    auto const pr2 = make_phi_rule(2 * quad.phi_nodes);
    std::size_t checked = 0;
    double change = 0, scale = 0;
    for (std::size_t i = 0; i < n && checked < quad.check_pairs; ++i)
    {
        std::size_t const j = (i * 7919 + 1) % n;
        auto const& a = e.particles[i];
        auto const& b = e.particles[j];
        if (j == i || beta_weight(kernel.mollifier, a.r - b.r) == 0)
            continue;
        auto const c1 = collision_integral(psi, a.r, a.v, b.v, ar, pr);
        auto const c2 = collision_integral(psi, a.r, a.v, b.v, ar2, pr2);
        change += std::fabs(c1.value - c2.value);
        scale += c2.magnitude;
        ++checked;
    }
    if (change > quad.tolerance * scale)
    {
        std::ostringstream os;
        os << "collision quadrature for '" << psi.name << "' changed by " << change
           << " under refinement (scale " << scale << ")";
        throw QuadratureError(os.str());
    }

    constexpr std::size_t chunk = 8;
    std::vector<double> partial(chunk_count(n, chunk), 0);
    parallel_for(partial.size(), threads, [&](std::size_t c) {
        auto const range = chunk_range(n, chunk, c);
        double acc = 0;
        for (std::size_t i = range.begin; i < range.end; ++i)
        {
            auto const& a = e.particles[i];
            for (std::size_t j = 0; j < n; ++j)
            {
                auto const& b = e.particles[j];
                double const beta = beta_weight(kernel.mollifier, a.r - b.r);
                if (beta == 0 || j == i)
                    continue;
                double const rate = beta * sigma_rate(kernel.cross, norm(a.v - b.v));
                acc += rate * collision_integral(psi, a.r, a.v, b.v, ar, pr).value;
            }
        }
        partial[c] = acc;
    });
    double collision = 0;
    for (double p : partial)
        collision += p;
    return transport + collision / (static_cast<double>(n) * static_cast<double>(n));
}

//---------------------------------------------------------------------------//
std::vector<WeakFormResidual> weak_form_residual(Ensemble const* before,
                                                 Ensemble const& at,
                                                 Ensemble const& after,
                                                 std::vector<TestFunction> const& bank,
                                                 CollisionKernel const& kernel,
                                                 GeneratorQuadrature const& quad,
                                                 unsigned threads)
{
    double const h = after.t - at.t;
    if (!(h > 0))
        throw std::invalid_argument("weak_form_residual: later snapshot must follow");
    if (before && std::fabs((at.t - before->t) - h) > 1e-9 * h)
        throw std::invalid_argument("weak_form_residual: centered stencil must be symmetric");
    std::vector<WeakFormResidual> out;
    for (auto const& psi : bank)
    {
        auto mean_of = [&](Ensemble const& e) {
            return integrate(e, [&](ParticleState const& p) { return psi.value(p.r, p.v); });
        };
        WeakFormResidual r;
        r.name = psi.name;
        r.t = at.t;
        r.h = h;
        r.difference = before ? (mean_of(after) - mean_of(*before)) / (2 * h)
                              : (mean_of(after) - mean_of(at)) / h;
        r.generator = generator_expectation(at, psi, kernel, quad, threads);
        r.residual = r.difference - r.generator;
        out.push_back(r);
    }
    return out;
}

std::vector<ResidualBias> residual_bias(Ensemble const& at,
                                        SimConfig const& cfg,
                                        std::vector<double> const& h,
                                        std::vector<TestFunction> const& bank,
                                        std::size_t replicates,
                                        GeneratorQuadrature const& quad)
{
    if (h.empty())
        throw std::invalid_argument("residual_bias: empty step list");
    for (double hk : h)
        if (!(hk > 0))
            throw std::invalid_argument("residual_bias: steps must be positive");
    std::vector<double> gen;
    for (auto const& psi : bank)
        gen.push_back(generator_expectation(at, psi, cfg.kernel, quad, cfg.threads));
    std::vector<double> base;
    for (auto const& psi : bank)
        base.push_back(integrate(at, [&](ParticleState const& p) { return psi.value(p.r, p.v); }));

    std::vector<double> times;
    for (double hk : h)
    {
        times.push_back(at.t + hk / 2);
        times.push_back(at.t + hk);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    // raw[f][k][rep], comp[f][k][rep]
    using Table = std::vector<std::vector<std::vector<double>>>;
    Table raw(bank.size(), std::vector<std::vector<double>>(h.size(), std::vector<double>(replicates)));
    Table comp = raw;
    parallel_for(replicates, cfg.threads, [&](std::size_t rep) {
        SimConfig c = cfg;
        c.seed = cfg.seed * 1000003u + rep + 1;
        c.t_end = times.back();
        c.snapshot_times = times;
        c.snapshot_every = 0;
        c.record_events = false;
        c.threads = 1;
        auto const traj = run_from(at, c);
        for (std::size_t f = 0; f < bank.size(); ++f)
        {
            auto const& psi = bank[f];
            std::vector<double> g(times.size());
            for (std::size_t m = 0; m < times.size(); ++m)
                g[m] = generator_expectation(traj.at(times[m]), psi, cfg.kernel, quad, 1) - gen[f];
            auto g_at = [&](double t) {
                auto it = std::lower_bound(times.begin(), times.end(), t);
                return g[static_cast<std::size_t>(it - times.begin())];
            };
            for (std::size_t k = 0; k < h.size(); ++k)
            {
                auto const& later = traj.at(at.t + h[k]);
                double const m = integrate(
                    later, [&](ParticleState const& p) { return psi.value(p.r, p.v); });
                raw[f][k][rep] = (m - base[f]) / h[k] - gen[f];
                comp[f][k][rep] = (4 * g_at(at.t + h[k] / 2) + g_at(at.t + h[k])) / 6;
            }
        }
    });
    std::vector<ResidualBias> out;
    for (std::size_t f = 0; f < bank.size(); ++f)
        for (std::size_t k = 0; k < h.size(); ++k)
            out.push_back({bank[f].name, h[k], mean_estimate(raw[f][k]),
                           mean_estimate(comp[f][k]), raw[f][k], comp[f][k]});
    return out;
}

//---------------------------------------------------------------------------//
void write_observables_csv(std::string const& path, std::vector<ObservableRow> const& rows)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path);
    os << "observable,t,value,stderr\n" << std::setprecision(17);
    for (auto const& r : rows)
        os << r.observable << ',' << r.t << ',' << r.value << ',' << r.stderr_ << '\n';
}

//---------------------------------------------------------------------------//
}  // namespace enskog
