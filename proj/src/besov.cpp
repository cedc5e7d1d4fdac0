//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file besov.cpp
//---------------------------------------------------------------------------//
#include "enskog/besov.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

#include "enskog/parallel.hpp"
#include "enskog/rng.hpp"
#include "enskog/stats.hpp"

namespace enskog
{
namespace
{
double bump_profile(double s2)
{
    return s2 < 1 ? std::exp(1 - 1 / (1 - s2)) : 0.0;
}

//! max over s in [0,1) of |d/ds exp(1 - 1/(1 - s^2))|
double bump_lipschitz()
{
    auto slope = [](double s) {
        double const d = 1 - s * s;
        return bump_profile(s * s) * 2 * s / (d * d);
    };
    double best = 0, at = 0;
    for (int k = 1; k < 20000; ++k)
    {
        double const s = k / 20000.0;
        if (slope(s) > best)
        {
            best = slope(s);
            at = s;
        }
    }
    // golden-section refinement around the grid maximum
    double lo = at - 1 / 20000.0, hi = at + 1 / 20000.0;
    double const g = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 80; ++it)
    {
        double const x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        if (slope(x1) > slope(x2))
            hi = x2;
        else
            lo = x1;
    }
    return std::max(best, slope(0.5 * (lo + hi))) * (1 + 1e-9);
}

void check_alpha(double a)
{
    if (!(a > 0 && a <= 1))
        throw std::invalid_argument("hol_alpha must lie in (0, 1]");
}
}  // namespace

//---------------------------------------------------------------------------//
double HolderTestFn::operator()(Vec3 const& x) const
{
    switch (family)
    {
        case HolderFamily::bump:
            return bump_profile(norm2(x - center) / (scale * scale));
        case HolderFamily::ramp:
            return std::clamp(dot(x - center, direction) / scale, -1.0, 1.0);
        case HolderFamily::cusp:
            return std::max(0.0, 1 - std::pow(norm(x - center) / scale, hol_alpha));
    }
    return 0;
}

HolderTestFn make_bump(double hol_alpha, Vec3 center, double radius)
{
    check_alpha(hol_alpha);
    static double const lip = bump_lipschitz();
    HolderTestFn f;
    f.family = HolderFamily::bump;
    f.hol_alpha = hol_alpha;
    f.center = center;
    f.scale = radius;
    f.sup_norm = 1;
    // range [0, 1]: min(1, L d) <= (L d)^alpha
    f.holder_constant = std::pow(lip / radius, hol_alpha);
    f.norm_bound = f.sup_norm + f.holder_constant;
    std::ostringstream os;
    os << "bump_r" << radius;
    f.id = os.str();
    return f;
}

HolderTestFn make_ramp(double hol_alpha, Vec3 center, Vec3 direction, double width)
{
    check_alpha(hol_alpha);
    HolderTestFn f;
    f.family = HolderFamily::ramp;
    f.hol_alpha = hol_alpha;
    f.center = center;
    f.direction = direction / norm(direction);
    f.scale = width;
    f.sup_norm = 1;
    // range [-1, 1]: min(2, d / w) <= 2^{1-alpha} (d / w)^alpha
    f.holder_constant = std::pow(2.0, 1 - hol_alpha) * std::pow(width, -hol_alpha);
    f.norm_bound = f.sup_norm + f.holder_constant;
    std::ostringstream os;
    os << "ramp_" << f.direction.x << '_' << f.direction.y << '_' << f.direction.z << "_w" << width;
    f.id = os.str();
    return f;
}

HolderTestFn make_cusp(double hol_alpha, Vec3 center, double radius)
{
    check_alpha(hol_alpha);
    HolderTestFn f;
    f.family = HolderFamily::cusp;
    f.hol_alpha = hol_alpha;
    f.center = center;
    f.scale = radius;
    f.sup_norm = 1;
    // |a^alpha - b^alpha| <= |a - b|^alpha
    f.holder_constant = std::pow(radius, -hol_alpha);
    f.norm_bound = f.sup_norm + f.holder_constant;
    std::ostringstream os;
    os << "cusp_" << center.x << '_' << center.y << '_' << center.z << "_r" << radius;
    f.id = os.str();
    return f;
}

std::vector<HolderTestFn> default_holder_bank(double hol_alpha)
{
    std::vector<HolderTestFn> bank;
    for (double r : {0.5, 1.0, 2.0})
        bank.push_back(make_bump(hol_alpha, {}, r));
    for (Vec3 e : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}})
        bank.push_back(make_ramp(hol_alpha, {}, e, 1.0));
    for (Vec3 c : {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 1}})
        bank.push_back(make_cusp(hol_alpha, c, 1.0));
    return bank;
}

double holder_spot_check(HolderTestFn const& phi, std::size_t pairs, std::uint64_t seed)
{
    CounterRng rng(seed, StreamPurpose::sampling, 0);
    double worst = 0;
    for (std::size_t k = 0; k < pairs; ++k)
    {
        Vec3 x{rng.normal(), rng.normal(), rng.normal()};
        x = phi.center + (1.5 * phi.scale) * x;
        double const len = phi.scale * std::pow(10.0, -4 * rng.uniform());
        Vec3 d{rng.normal(), rng.normal(), rng.normal()};
        Vec3 const y = x + (len / norm(d)) * d;
        double const ratio = std::fabs(phi(x) - phi(y)) / std::pow(norm(x - y), phi.hol_alpha);
        worst = std::max(worst, ratio / phi.holder_constant);
    }
    return worst;
}

//---------------------------------------------------------------------------//
double finite_diff_functional(std::vector<Vec3> const& sample,
                              HolderTestFn const& phi,
                              Vec3 const& h)
{
    if (sample.empty())
        throw std::invalid_argument("finite_diff_functional: empty sample");
    double sum = 0;
    for (auto const& v : sample)
        sum += phi(v + h) - phi(v);
    return std::fabs(sum / static_cast<double>(sample.size()));
}

Interval c_interval(double gamma, double nu)
{
    return {(gamma + 1) / (2 * gamma + 1), nu};
}

Interval admissible_c_interval(double gamma, double nu)
{
    auto const iv = c_interval(gamma, nu);
    if (iv.empty())
    {
        std::ostringstream os;
        os << "admissible c-interval ((gamma+1)/(2 gamma+1), nu) = (" << iv.lo << ", " << iv.hi
           << ") is empty for gamma = " << gamma << ", nu = " << nu
           << ": need c > (gamma+1)/(2 gamma+1) and c < nu";
        throw BesovParameterError(os.str());
    }
    return iv;
}

double tradeoff_exponent(double gamma, double nu, double hol_alpha, double* best_c)
{
    auto const iv = admissible_c_interval(gamma, nu);
    double const k = (2 * gamma + 1) / (gamma + 1) * hol_alpha;
    double c = 1 / (k + 1 / nu);
    c = std::clamp(c, iv.lo, iv.hi);
    if (best_c)
        *best_c = c;
    return std::min(k * c, 1 - c / nu);
}

double default_besov_a(double gamma, double nu, double hol_alpha)
{
    double const top = tradeoff_exponent(gamma, nu, hol_alpha);
    if (!(top > hol_alpha))
    {
        std::ostringstream os;
        os << "no exponent a in (hol_alpha, " << top << ") for gamma = " << gamma
           << ", nu = " << nu << ", hol_alpha = " << hol_alpha;
        throw BesovParameterError(os.str());
    }
    return 0.5 * (hol_alpha + top);
}

std::vector<Vec3> default_h_grid()
{
    std::vector<Vec3> dirs{{1, 0, 0}, Vec3{1, 1, 0} / std::sqrt(2.0), Vec3{1, 1, 1} / std::sqrt(3.0)};
    std::vector<Vec3> out;
    for (auto const& d : dirs)
        for (int k = 0; k < 16; ++k)
            out.push_back(std::pow(10.0, -3 + 3.0 * k / 15) * d);
    return out;
}

BesovEstimate besov_estimate(std::vector<Vec3> const& sample,
                             double hol_alpha,
                             double a,
                             std::vector<Vec3> const& h_grid,
                             std::vector<HolderTestFn> const& bank,
                             BesovOptions const& opt)
{
    if (!(hol_alpha > 0 && hol_alpha < a && a < 1))
    {
        std::ostringstream os;
        os << "need 0 < hol_alpha < a < 1, got hol_alpha = " << hol_alpha << ", a = " << a;
        throw BesovParameterError(os.str());
    }
    if (sample.empty())
        throw std::invalid_argument("besov_estimate: empty sample");
    BesovEstimate est;
    est.a = a;
    est.hol_alpha = hol_alpha;
    est.c_range = admissible_c_interval(opt.gamma, opt.nu);
    tradeoff_exponent(opt.gamma, opt.nu, hol_alpha, &est.c);
    for (auto const& h : h_grid)
        if (!(norm(h) > 0 && norm(h) <= 1))
            throw std::invalid_argument("besov_estimate: h magnitudes must lie in (0, 1]");

    std::size_t const n_h = h_grid.size();
    est.rows.resize(bank.size() * n_h);
    parallel_for(est.rows.size(), opt.threads, [&](std::size_t idx) {
        auto const& phi = bank[idx / n_h];
        auto const& h = h_grid[idx % n_h];
        std::vector<double> diff(sample.size());
        for (std::size_t k = 0; k < sample.size(); ++k)
            diff[k] = phi(sample[k] + h) - phi(sample[k]);
        auto const m = mean_estimate(diff);
        BesovRow& r = est.rows[idx];
        r.phi_id = phi.id;
        r.h = h;
        r.h_norm = norm(h);
        r.value = std::fabs(m.mean);
        r.mc_stderr = m.stderr_;
        r.ratio = r.value / (phi.norm_bound * std::pow(r.h_norm, a));
        r.eps = std::pow(r.h_norm, est.c);
    });
    for (auto const& r : est.rows)
        est.kappa_hat = std::max(est.kappa_hat, r.ratio);
    return est;
}

//---------------------------------------------------------------------------//
Vec3 DensityField::node(std::size_t i, std::size_t j, std::size_t k) const
{
    return {box.lo.x + i * spacing.x, box.lo.y + j * spacing.y, box.lo.z + k * spacing.z};
}

double DensityField::integral() const
{
    auto w = [](std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; };
    double sum = 0;
    for (std::size_t i = 0; i < n[0]; ++i)
        for (std::size_t j = 0; j < n[1]; ++j)
            for (std::size_t k = 0; k < n[2]; ++k)
                sum += w(i, n[0]) * w(j, n[1]) * w(k, n[2]) * values[index(i, j, k)];
    return sum * spacing.x * spacing.y * spacing.z;
}

double silverman_bandwidth(std::vector<Vec3> const& sample)
{
    if (sample.size() < 2)
        throw std::invalid_argument("silverman_bandwidth: need at least two points");
    double sd = 0;
    for (int d = 0; d < 3; ++d)
    {
        std::vector<double> x;
        x.reserve(sample.size());
        for (auto const& v : sample)
            x.push_back(v[d]);
        double const n = static_cast<double>(x.size());
        double const mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
        double ss = 0;
        for (double xi : x)
            ss += (xi - mean) * (xi - mean);
        sd += std::sqrt(ss / (n - 1)) / 3;
    }
    return sd * std::pow(0.8, 1.0 / 7) * std::pow(static_cast<double>(sample.size()), -1.0 / 7);
}

DensityField kde_density(std::vector<Vec3> const& sample,
                         double bandwidth,
                         Box const& box,
                         std::size_t resolution,
                         unsigned threads)
{
    if (!(bandwidth > 0))
        throw std::invalid_argument("kde_density: bandwidth must be positive");
    if (resolution < 2)
        throw std::invalid_argument("kde_density: resolution must be at least 2");
    DensityField f;
    f.box = box;
    f.bandwidth = bandwidth;
    f.n = {resolution, resolution, resolution};
    double const r1 = static_cast<double>(resolution - 1);
    f.spacing = {(box.hi.x - box.lo.x) / r1, (box.hi.y - box.lo.y) / r1, (box.hi.z - box.lo.z) / r1};
    f.values.assign(resolution * resolution * resolution, 0);
    if (sample.empty())
        return f;

    // samples ordered by vx so each x-slab sees a contiguous range
    std::vector<std::size_t> order(sample.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sample[a].x < sample[b].x; });
    std::vector<double> xs;
    xs.reserve(order.size());
    for (auto k : order)
        xs.push_back(sample[k].x);

    double const reach = 5 * bandwidth;
    double const norm1 = 1 / (std::sqrt(2 * std::numbers::pi) * bandwidth);
    double const scale = norm1 * norm1 * norm1 / static_cast<double>(sample.size());
    auto gauss = [&](double d) { return std::exp(-0.5 * d * d / (bandwidth * bandwidth)); };

    parallel_for(resolution, threads, [&](std::size_t i) {
        double const x = box.lo.x + i * f.spacing.x;
        auto const first = std::lower_bound(xs.begin(), xs.end(), x - reach) - xs.begin();
        auto const last = std::upper_bound(xs.begin(), xs.end(), x + reach) - xs.begin();
        std::vector<double> plane(resolution * resolution, 0);
        for (auto idx = first; idx < last; ++idx)
        {
            Vec3 const& v = sample[order[static_cast<std::size_t>(idx)]];
            double const wx = gauss(x - v.x);
            auto range = [&](double c, double lo, double h) {
                long const a = static_cast<long>(std::ceil((c - reach - lo) / h));
                long const b = static_cast<long>(std::floor((c + reach - lo) / h));
                long const top = static_cast<long>(resolution) - 1;
                return std::pair<long, long>{std::max(0L, a), std::min(top, b)};
            };
            auto const [j0, j1] = range(v.y, box.lo.y, f.spacing.y);
            auto const [k0, k1] = range(v.z, box.lo.z, f.spacing.z);
            for (long j = j0; j <= j1; ++j)
            {
                double const wy = wx * gauss(box.lo.y + j * f.spacing.y - v.y);
                for (long k = k0; k <= k1; ++k)
                    plane[static_cast<std::size_t>(j) * resolution + static_cast<std::size_t>(k)]
                        += wy * gauss(box.lo.z + k * f.spacing.z - v.z);
            }
        }
        for (std::size_t jk = 0; jk < plane.size(); ++jk)
            f.values[i * resolution * resolution + jk] = plane[jk] * scale;
    });
    return f;
}

double in_box_fraction(std::vector<Vec3> const& sample, Box const& box)
{
    if (sample.empty())
        return 0;
    std::size_t in = 0;
    for (auto const& v : sample)
    {
        bool inside = true;
        for (int d = 0; d < 3; ++d)
            inside = inside && v[d] >= box.lo[d] && v[d] <= box.hi[d];
        in += inside;
    }
    return static_cast<double>(in) / static_cast<double>(sample.size());
}

double besov_seminorm(DensityField const& field, double s, unsigned threads)
{
    if (!(s > 0 && s < 1))
        throw std::invalid_argument("besov_seminorm: s must lie in (0, 1)");
    double const cell = field.spacing.x * field.spacing.y * field.spacing.z;
    double l1 = 0;
    for (double v : field.values)
        l1 += std::fabs(v);
    l1 *= cell;

    std::vector<std::array<long, 3>> shifts;
    long const mx = static_cast<long>(std::ceil(1 / field.spacing.x));
    long const my = static_cast<long>(std::ceil(1 / field.spacing.y));
    long const mz = static_cast<long>(std::ceil(1 / field.spacing.z));
    for (long a = -mx; a <= mx; ++a)
        for (long b = -my; b <= my; ++b)
            for (long c = -mz; c <= mz; ++c)
            {
                Vec3 const h{a * field.spacing.x, b * field.spacing.y, c * field.spacing.z};
                double const len = norm(h);
                if (len > 0 && len < 1)
                    shifts.push_back({a, b, c});
            }

    std::vector<double> ratio(shifts.size(), 0);
    auto wrap = [](long i, long d, std::size_t n) {
        long const m = static_cast<long>(n);
        return static_cast<std::size_t>(((i + d) % m + m) % m);
    };
    parallel_for(shifts.size(), threads, [&](std::size_t q) {
        auto const& sh = shifts[q];
        double sum = 0;
        for (std::size_t i = 0; i < field.n[0]; ++i)
        {
            std::size_t const ii = wrap(static_cast<long>(i), sh[0], field.n[0]);
            for (std::size_t j = 0; j < field.n[1]; ++j)
            {
                std::size_t const jj = wrap(static_cast<long>(j), sh[1], field.n[1]);
                for (std::size_t k = 0; k < field.n[2]; ++k)
                {
                    std::size_t const kk = wrap(static_cast<long>(k), sh[2], field.n[2]);
                    sum += std::fabs(field.values[field.index(ii, jj, kk)]
                                     - field.values[field.index(i, j, k)]);
                }
            }
        }
        Vec3 const h{sh[0] * field.spacing.x, sh[1] * field.spacing.y, sh[2] * field.spacing.z};
        ratio[q] = sum * cell / std::pow(norm(h), s);
    });
    double sup = 0;
    for (double r : ratio)
        sup = std::max(sup, r);
    return l1 + sup;
}

void write_density_csv(std::string const& path, DensityField const& field)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path);
    os << "vx,vy,vz,density\n" << std::setprecision(17);
    for (std::size_t i = 0; i < field.n[0]; ++i)
        for (std::size_t j = 0; j < field.n[1]; ++j)
            for (std::size_t k = 0; k < field.n[2]; ++k)
            {
                Vec3 const p = field.node(i, j, k);
                os << p.x << ',' << p.y << ',' << p.z << ',' << field.values[field.index(i, j, k)]
                   << '\n';
            }
}

//---------------------------------------------------------------------------//
}  // namespace enskog
