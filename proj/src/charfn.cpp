//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file charfn.cpp
//---------------------------------------------------------------------------//
#include "enskog/charfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "enskog/parallel.hpp"
#include "enskog/vecgeom.hpp"

namespace enskog
{
namespace
{
constexpr double pi = std::numbers::pi;
using cplx = std::complex<double>;

struct ThetaRule
{
    std::vector<double> theta;
    //! Gauss weight times the angular density times theta (log substitution)
    std::vector<double> weight;
};

/*!
 * Gauss panels in log(theta) on [lo, hi], built downward from hi.
 *
 * omega bounds the phase rate d(phase)/d(theta); panels shrink so that the
 * phase moves by at most 2 radians across each one.
 */
ThetaRule make_theta_rule(AngularMeasure const& q,
                          double lo,
                          double hi,
                          double per_log,
                          double omega,
                          int refine)
{
    using gl = boost::math::quadrature::gauss<double, 8>;
    auto const& x = gl::abscissa();
    auto const& w = gl::weights();
    ThetaRule rule;
    auto push = [&](double s, double wt) {
        double const th = std::exp(s);
        rule.theta.push_back(th);
        rule.weight.push_back(wt * q.b_coeff * std::pow(th, -q.nu));
    };
    double const s_lo = std::log(lo);
    double s_hi = std::log(hi);
    while (s_hi > s_lo)
    {
        double h = 1 / per_log;
        if (omega > 0)
            h = std::min(h, 2 / (omega * std::exp(s_hi)));
        h /= refine;
        double const a = std::max(s_lo, s_hi - h);
        double const mid = 0.5 * (a + s_hi), half = 0.5 * (s_hi - a);
        for (std::size_t k = 0; k < x.size(); ++k)
        {
            push(mid + half * x[k], half * w[k]);
            if (x[k] != 0)
                push(mid - half * x[k], half * w[k]);
        }
        s_hi = a;
    }
    return rule;
}

struct CopyNode
{
    Vec3 x;  // u - v0
    double rate{0};
};

//! Nodes with nonzero rate, in path order
std::vector<CopyNode> active_nodes(CharExponentQuery const& q,
                                   CopyPaths const& copies,
                                   CollisionKernel const& kernel)
{
    std::vector<CopyNode> out;
    for (std::size_t k = 0; k < copies.states.size(); ++k)
    {
        for (auto const& c : copies.states[k])
        {
            Vec3 const x = c.v - q.v0;
            if (norm2(x) == 0)
                continue;
            double const beta = beta_weight(kernel.mollifier, q.r0 - c.r);
            if (beta == 0)
                continue;
            out.push_back(
                {x, copies.width[k] * copies.weight * beta * sigma_rate(kernel.cross, norm(x))});
        }
    }
    return out;
}

//! int dphi int Q(dtheta) (1 - e^{i <kappa, alpha>}) for one relative velocity
cplx node_integral(Vec3 const& kappa,
                   Vec3 const& x,
                   ThetaRule const& tr,
                   int phi_nodes,
                   PhiMethod method,
                   double tail_coeff)
{
    double const A = dot(kappa, x);
    cplx sum = 0;
    if (method == PhiMethod::bessel)
    {
        Vec3 const perp = kappa - (A / norm2(x)) * x;
        double const B = norm(x) * norm(perp);
        for (std::size_t k = 0; k < tr.theta.size(); ++k)
        {
            double const sh = std::sin(tr.theta[k] / 2);
            double const a = sh * sh * A;
            double const b = std::sin(tr.theta[k]) / 2 * B;
            sum += tr.weight[k] * 2 * pi * (1.0 - std::polar(1.0, a) * std::cyl_bessel_j(0.0, b));
        }
    }
    else
    {
        auto const frame = build_frame(x);
        double const ci = dot(kappa, frame.i_vec);
        double const cj = dot(kappa, frame.j_vec);
        double const dphi = 2 * pi / phi_nodes;
        for (std::size_t k = 0; k < tr.theta.size(); ++k)
        {
            double const sh = std::sin(tr.theta[k] / 2);
            double const a = sh * sh * A;
            double const b = std::sin(tr.theta[k]) / 2;
            cplx inner = 0;
            for (int l = 0; l < phi_nodes; ++l)
            {
                double const ph = l * dphi;
                inner += 1.0 - std::polar(1.0, a + b * (ci * std::cos(ph) + cj * std::sin(ph)));
            }
            sum += tr.weight[k] * dphi * inner;
        }
    }
    if (tail_coeff > 0)
    {
        Vec3 const perp = kappa - (A / norm2(x)) * x;
        double const B2 = norm2(x) * norm2(perp);
        sum += 2 * pi * tail_coeff * cplx(B2 / 16, -A / 4);
    }
    return sum;
}

struct Setup
{
    double cut{0};
    ThetaRule rule;
    int phi_nodes{0};
    double tail{0};
};

Setup make_setup(CharExponentQuery const& q,
                 CollisionKernel const& kernel,
                 CharfnOptions const& opt,
                 double max_rel_speed,
                 int refine)
{
    if (!(q.eps > 0 && q.eps < 1))
        throw std::invalid_argument("charfn: eps must lie in (0, 1)");
    if (!(q.eps < q.t))
        throw std::invalid_argument("charfn: eps must be smaller than t");
    Setup s;
    s.cut = small_jump_cut(q.eps, kernel.angular.nu);
    if (!(opt.theta_floor > 0 && opt.theta_floor < s.cut))
        throw std::invalid_argument("charfn: theta_floor must lie in (0, eps^{1/nu})");
    double const omega = norm(q.freq) * max_rel_speed;
    s.rule = make_theta_rule(kernel.angular, opt.theta_floor, s.cut, opt.panels_per_log, omega,
                             refine);
    // the uniform rule integrates e^{i b cos(phi)} accurately once M > b + 32
    double const b_max = 0.5 * std::sin(std::min(s.cut, pi / 2)) * omega;
    int m = opt.phi_nodes;
    while (m < 1.5 * b_max + 32)
        m *= 2;
    s.phi_nodes = refine * m;
    double const nu = kernel.angular.nu;
    if (opt.analytic_tail)
        s.tail = kernel.angular.b_coeff * std::pow(opt.theta_floor, 2 - nu) / (2 - nu);
    return s;
}

double max_speed(std::vector<CopyNode> const& nodes)
{
    double m = 0;
    for (auto const& nd : nodes)
        m = std::max(m, norm(nd.x));
    return m;
}
}  // namespace

//---------------------------------------------------------------------------//
bool CopyPaths::empty() const
{
    return std::all_of(states.begin(), states.end(), [](auto const& v) { return v.empty(); });
}

CopyPaths copies_from_trajectory(Trajectory const& traj,
                                 double t0,
                                 double t1,
                                 std::optional<std::size_t> exclude)
{
    if (!(t1 > t0))
        throw std::invalid_argument("copies_from_trajectory: empty window");
    double const tol = 1e-12 * std::max(1.0, std::fabs(t1));
    CopyPaths out;
    std::vector<Ensemble const*> sel;
    for (auto const& s : traj.snapshots)
        if (s.t >= t0 - tol && s.t < t1 - tol)
            sel.push_back(&s);
    std::sort(sel.begin(), sel.end(), [](auto a, auto b) { return a->t < b->t; });
    if (sel.empty() || std::fabs(sel.front()->t - t0) > tol)
        throw std::invalid_argument("copies_from_trajectory: no snapshot at the window start");
    for (std::size_t k = 0; k < sel.size(); ++k)
    {
        double const next = k + 1 < sel.size() ? sel[k + 1]->t : t1;
        out.time.push_back(sel[k]->t);
        out.width.push_back(next - sel[k]->t);
        std::vector<ParticleState> st;
        for (std::size_t p = 0; p < sel[k]->size(); ++p)
            if (!exclude || *exclude != p)
                st.push_back(sel[k]->particles[p]);
        out.states.push_back(std::move(st));
    }
    out.weight = 1.0 / static_cast<double>(sel.front()->size());
    return out;
}

double small_jump_cut(double eps, double nu)
{
    return std::pow(eps, 1 / nu);
}

std::complex<double> psi(CharExponentQuery const& q,
                         CopyPaths const& copies,
                         CollisionKernel const& kernel,
                         CharfnOptions const& opt)
{
    if (copies.empty())
        throw std::invalid_argument("psi: no copies");
    auto const nodes = active_nodes(q, copies, kernel);
    double const speed = max_speed(nodes);
    auto const setup = make_setup(q, kernel, opt, speed, 1);
    if (norm2(q.freq) == 0 || nodes.empty())
        return 0;

    if (opt.tolerance > 0)
    {
        auto const fine = make_setup(q, kernel, opt, speed, 2);
        std::size_t const take = std::min(opt.check_copies, nodes.size());
        std::size_t const stride = nodes.size() / take;
        double change = 0, scale = 0;
        for (std::size_t k = 0; k < take; ++k)
        {
            auto const& nd = nodes[k * stride];
            cplx const c1 = node_integral(q.freq, nd.x, setup.rule, setup.phi_nodes,
                                          opt.phi_method, setup.tail);
            cplx const c2 = node_integral(q.freq, nd.x, fine.rule, fine.phi_nodes,
                                          opt.phi_method, fine.tail);
            change += nd.rate * std::abs(c1 - c2);
            scale += nd.rate * std::abs(c2);
        }
        if (change > opt.tolerance * scale)
        {
            std::ostringstream os;
            os << "psi quadrature changed by " << change / scale
               << " (relative) under refinement at |kappa| = " << norm(q.freq);
            throw CharfnQuadratureError(os.str());
        }
    }

    cplx sum = 0;
    for (auto const& nd : nodes)
        sum += nd.rate
               * node_integral(q.freq, nd.x, setup.rule, setup.phi_nodes, opt.phi_method, setup.tail);
    return sum;
}

//---------------------------------------------------------------------------//
std::vector<Vec3> default_lower_bound_grid()
{
    std::vector<Vec3> dirs{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, Vec3{1, 1, 1} / std::sqrt(3.0)};
    std::vector<Vec3> out;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        for (auto const& d : dirs)
            out.push_back(m * d);
    return out;
}

LowerBoundReport lower_bound_check(CharExponentQuery const& base,
                                   std::vector<Vec3> const& freq_grid,
                                   CopyPaths const& copies,
                                   CollisionKernel const& kernel,
                                   CharfnOptions const& opt)
{
    double const nu = kernel.angular.nu;
    double const scale = std::pow(base.eps, -1 / nu);
    std::vector<LowerBoundRow> rows(freq_grid.size());
    parallel_for(freq_grid.size(), opt.threads, [&](std::size_t k) {
        CharExponentQuery q = base;
        q.freq = scale * freq_grid[k];
        double const m = norm(freq_grid[k]);
        rows[k].kappa = freq_grid[k];
        auto const z = m == 0 ? std::complex<double>{} : psi(q, copies, kernel, opt);
        rows[k].re_psi = z.real();
        rows[k].im_psi = z.imag();
        rows[k].shape = std::min(m * m, std::pow(m, nu));
    });
    LowerBoundReport rep;
    bool any = false;
    double c = 0;
    for (auto const& r : rows)
    {
        if (r.shape == 0)
            continue;
        double const ratio = r.re_psi / r.shape;
        c = any ? std::min(c, ratio) : ratio;
        any = true;
    }
    rep.c = any ? std::max(c, 0.0) : 0.0;
    for (auto& r : rows)
        r.margin = r.re_psi - rep.c * r.shape;
    rep.rows = std::move(rows);
    rep.passed = rep.c > 0;
    return rep;
}

//---------------------------------------------------------------------------//
JumpMeasureMoments jump_measure_moments(CharExponentQuery const& q,
                                        CopyPaths const& copies,
                                        CollisionKernel const& kernel,
                                        CharfnOptions const& opt)
{
    if (copies.empty())
        throw std::invalid_argument("jump_measure_moments: no copies");
    auto const setup = make_setup(q, kernel, opt, 0, 1);
    double const nu = kernel.angular.nu;
    double const b = kernel.angular.b_coeff;
    // int (sin(theta/2))^n Q(dtheta) on the cut range, n = 1 and 4
    double s1 = 0, s4 = 0;
    for (std::size_t k = 0; k < setup.rule.theta.size(); ++k)
    {
        double const sh = std::sin(setup.rule.theta[k] / 2);
        s1 += setup.rule.weight[k] * sh;
        s4 += setup.rule.weight[k] * std::pow(sh, 4);
    }
    if (opt.analytic_tail)
    {
        double const f = opt.theta_floor;
        s1 += b * std::pow(f, 1 - nu) / (2 * (1 - nu));
        s4 += b * std::pow(f, 4 - nu) / (16 * (4 - nu));
    }
    JumpMeasureMoments m;
    for (auto const& nd : active_nodes(q, copies, kernel))
    {
        double const y = norm(nd.x) / setup.cut;
        m.m1 += nd.rate * 2 * pi * y * s1;
        m.m4 += nd.rate * 2 * pi * std::pow(y, 4) * s4;
    }
    return m;
}

//---------------------------------------------------------------------------//
GradDensityBound grad_density_bound(CharExponentQuery const& q,
                                    CopyPaths const& copies,
                                    CollisionKernel const& kernel,
                                    CharfnOptions const& opt)
{
    GradDensityBound out;
    out.moments = jump_measure_moments(q, copies, kernel, opt);
    auto const lb = lower_bound_check(q, default_lower_bound_grid(), copies, kernel, opt);
    out.c_fit = lb.c;
    if (!lb.passed)
        throw DivergentIntegralError(
            "grad_density_bound: fitted lower-bound constant is 0, "
            "exp(-Re Phi)(1 + |kappa|) is not integrable");

    double const nu = kernel.angular.nu;
    double const c = out.c_fit;
    double const scale = std::pow(q.eps, -1 / nu);
    // the majorant e^{-c r^nu} is negligible past r_max
    double const r_max = std::min(opt.grad_radius_cap, std::max(10.0, std::pow(60 / c, 1 / nu)));

    auto fast = opt;
    fast.phi_method = PhiMethod::bessel;
    fast.tolerance = 0;

    // ReΦ(-kappa) = ReΦ(kappa): a Fibonacci half-sphere, mirrored
    constexpr int n_dir = 24;
    std::vector<Vec3> dirs;
    double const golden = pi * (3 - std::sqrt(5.0));
    for (int k = 0; k < n_dir; ++k)
    {
        double const z = (k + 0.5) / n_dir;
        double const rho = std::sqrt(1 - z * z);
        dirs.push_back({rho * std::cos(golden * k), rho * std::sin(golden * k), z});
    }

    using gl = boost::math::quadrature::gauss<double, 8>;
    // one radial panel over all directions; returns the largest e^{-Re Phi} at hi
    double inner = 0;
    double edge_ratio = 0;
    auto panel = [&](double lo, double hi, bool logscale) {
        std::vector<double> rr, rw;
        auto const& x = gl::abscissa();
        auto const& w = gl::weights();
        for (std::size_t k = 0; k < x.size(); ++k)
        {
            for (double sgn : {1.0, -1.0})
            {
                if (sgn < 0 && x[k] == 0)
                    continue;
                double const s = 0.5 * (lo + hi) + sgn * 0.5 * (hi - lo) * x[k];
                double const wt = 0.5 * (hi - lo) * w[k];
                rr.push_back(logscale ? std::exp(s) : s);
                rw.push_back(logscale ? wt * std::exp(s) : wt);
            }
        }
        double const r_end = logscale ? std::exp(hi) : hi;
        rr.push_back(r_end);
        rw.push_back(0);
        std::vector<double> acc(dirs.size(), 0), edge(dirs.size(), 0), edge_re(dirs.size(), 0);
        parallel_for(dirs.size(), opt.threads, [&](std::size_t d) {
            CharExponentQuery qq = q;
            for (std::size_t k = 0; k < rr.size(); ++k)
            {
                double const r = rr[k];
                qq.freq = (scale * r) * dirs[d];
                double const re = psi(qq, copies, kernel, fast).real();
                double const e = std::exp(-re);
                acc[d] += rw[k] * e * (1 + r) * r * r;
                if (k + 1 == rr.size())
                {
                    edge[d] = e;
                    edge_re[d] = re;
                }
            }
        });
        for (double v : acc)
            inner += v * 4 * pi / n_dir;
        edge_ratio = *std::min_element(edge_re.begin(), edge_re.end()) / std::pow(r_end, nu);
        return *std::max_element(edge.begin(), edge.end());
    };
    panel(0, 1, false);
    double r_cut = 1;
    for (double s = 0; r_cut < r_max; s += 0.5)
    {
        double const edge = panel(s, s + 0.5, true);
        r_cut = std::exp(s + 0.5);
        if (r_cut >= 10 && edge < std::exp(-50.0))
            break;
    }

    // beyond r_cut: Re Phi >= c_tail r^nu
    out.c_tail = std::max(c, edge_ratio);
    double const x = out.c_tail * std::pow(r_cut, nu);
    for (double k : {2.0, 3.0})
    {
        double const a = (k + 1) / nu;
        out.tail += 4 * pi / nu * std::pow(out.c_tail, -a) * boost::math::tgamma(a, x);
    }
    out.integral = inner + out.tail;
    out.value = scale * (1 + std::pow(out.moments.m1, 4) + out.moments.m4) * out.integral;
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace enskog
