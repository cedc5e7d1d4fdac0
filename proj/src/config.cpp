//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file config.cpp
//---------------------------------------------------------------------------//
#include "enskog/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "enskog/besov.hpp"
#include "enskog/observables.hpp"

namespace enskog
{
namespace
{
//---------------------------------------------------------------------------//
std::string_view trim(std::string_view s)
{
    auto const b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    auto const e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s)
{
    std::vector<std::string_view> out;
    s = trim(s);
    if (s.empty())
        return out;
    std::size_t start = 0;
    while (true)
    {
        auto const comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma - start)));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

double parse_double(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
    return v;
}

std::uint64_t parse_uint(std::string_view s)
{
    s = trim(s);
    std::uint64_t v = 0;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("expected a nonnegative integer, got '" + std::string(s)
                                    + "'");
    return v;
}

bool parse_bool(std::string_view s)
{
    s = trim(s);
    if (s == "true" || s == "1")
        return true;
    if (s == "false" || s == "0")
        return false;
    throw std::invalid_argument("expected true or false, got '" + std::string(s) + "'");
}

Vec3 parse_vec(std::string_view s)
{
    auto const parts = split_list(s);
    if (parts.size() != 3)
        throw std::invalid_argument("expected three comma-separated numbers");
    return {parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
}

std::vector<double> parse_doubles(std::string_view s)
{
    std::vector<double> out;
    for (auto p : split_list(s))
        out.push_back(parse_double(p));
    return out;
}

std::vector<std::string> parse_names(std::string_view s)
{
    std::vector<std::string> out;
    for (auto p : split_list(s))
    {
        if (p.empty())
            throw std::invalid_argument("empty list entry");
        out.emplace_back(p);
    }
    return out;
}

std::string fmt(double v)
{
    char buf[64];
    auto const res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt(std::uint64_t v)
{
    return std::to_string(v);
}

std::string fmt(Vec3 const& v)
{
    return fmt(v.x) + ", " + fmt(v.y) + ", " + fmt(v.z);
}

std::string fmt(std::vector<double> const& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + fmt(v[i]);
    return out;
}

std::string fmt(std::vector<std::string> const& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + v[i];
    return out;
}

//---------------------------------------------------------------------------//
char const* to_string(Scheme s)
{
    return s == Scheme::symmetric_pair ? "symmetric_pair" : "one_sided";
}

Scheme scheme_from_string(std::string_view s)
{
    if (s == "symmetric_pair")
        return Scheme::symmetric_pair;
    if (s == "one_sided")
        return Scheme::one_sided;
    throw std::invalid_argument("unknown scheme '" + std::string(s)
                                + "' (expected symmetric_pair or one_sided)");
}

char const* to_string(InitKind k)
{
    switch (k)
    {
        case InitKind::gaussian:
            return "gaussian";
        case InitKind::uniform_ball:
            return "uniform_ball";
        case InitKind::two_cluster:
            return "two_cluster";
    }
    return "?";
}

InitKind init_from_string(std::string_view s)
{
    if (s == "gaussian")
        return InitKind::gaussian;
    if (s == "uniform_ball")
        return InitKind::uniform_ball;
    if (s == "two_cluster")
        return InitKind::two_cluster;
    throw std::invalid_argument("unknown initial law '" + std::string(s)
                                + "' (expected gaussian, uniform_ball or two_cluster)");
}

//---------------------------------------------------------------------------//
struct Field
{
    char const* key;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(RunConfig const&)> get;
};

#define ENSKOG_DOUBLE(KEY, EXPR) \
    Field{KEY, \
          [](RunConfig& c, std::string_view s) { c.EXPR = parse_double(s); }, \
          [](RunConfig const& c) { return fmt(c.EXPR); }}
#define ENSKOG_UINT(KEY, EXPR) \
    Field{KEY, \
          [](RunConfig& c, std::string_view s) { \
              c.EXPR = static_cast<decltype(c.EXPR)>(parse_uint(s)); \
          }, \
          [](RunConfig const& c) { return fmt(static_cast<std::uint64_t>(c.EXPR)); }}
#define ENSKOG_VEC(KEY, EXPR) \
    Field{KEY, \
          [](RunConfig& c, std::string_view s) { c.EXPR = parse_vec(s); }, \
          [](RunConfig const& c) { return fmt(c.EXPR); }}
#define ENSKOG_DOUBLES(KEY, EXPR) \
    Field{KEY, \
          [](RunConfig& c, std::string_view s) { c.EXPR = parse_doubles(s); }, \
          [](RunConfig const& c) { return fmt(c.EXPR); }}
#define ENSKOG_NAMES(KEY, EXPR) \
    Field{KEY, \
          [](RunConfig& c, std::string_view s) { c.EXPR = parse_names(s); }, \
          [](RunConfig const& c) { return fmt(c.EXPR); }}

std::vector<Field> const& fields()
{
    static std::vector<Field> const table = {
        Field{"workflow",
              [](RunConfig& c, std::string_view s) { c.workflow = workflow_from_string(s); },
              [](RunConfig const& c) { return std::string(to_string(c.workflow)); }},
        Field{"out_dir",
              [](RunConfig& c, std::string_view s) { c.out_dir = std::string(s); },
              [](RunConfig const& c) { return c.out_dir; }},
        ENSKOG_UINT("seed", sim.seed),
        ENSKOG_UINT("threads", sim.threads),
        ENSKOG_UINT("n_particles", sim.n_particles),
        ENSKOG_DOUBLE("t_end", sim.t_end),
        ENSKOG_DOUBLE("dt", sim.dt),
        Field{"scheme",
              [](RunConfig& c, std::string_view s) { c.sim.scheme = scheme_from_string(s); },
              [](RunConfig const& c) { return std::string(to_string(c.sim.scheme)); }},
        ENSKOG_DOUBLE("nu", sim.kernel.angular.nu),
        ENSKOG_DOUBLE("b_coeff", sim.kernel.angular.b_coeff),
        ENSKOG_DOUBLE("theta_min", sim.kernel.angular.theta_min),
        ENSKOG_DOUBLE("gamma", sim.kernel.cross.gamma),
        ENSKOG_DOUBLE("c_sigma", sim.kernel.cross.c_sigma),
        ENSKOG_DOUBLE("r_beta", sim.kernel.mollifier.r_beta),
        ENSKOG_DOUBLE("amplitude", sim.kernel.mollifier.amplitude),
        Field{"init",
              [](RunConfig& c, std::string_view s) { c.sim.init.kind = init_from_string(s); },
              [](RunConfig const& c) { return std::string(to_string(c.sim.init.kind)); }},
        ENSKOG_DOUBLE("pos_scale", sim.init.pos_scale),
        ENSKOG_DOUBLE("vel_scale", sim.init.vel_scale),
        ENSKOG_VEC("pos_center", sim.init.pos_center),
        ENSKOG_VEC("vel_center", sim.init.vel_center),
        ENSKOG_VEC("vel_offset", sim.init.vel_offset),
        ENSKOG_DOUBLES("snapshot_times", sim.snapshot_times),
        ENSKOG_UINT("snapshot_every", sim.snapshot_every),
        Field{"record_events",
              [](RunConfig& c, std::string_view s) { c.sim.record_events = parse_bool(s); },
              [](RunConfig const& c) {
                  return std::string(c.sim.record_events ? "true" : "false");
              }},
        ENSKOG_DOUBLE("record_rejected_from", sim.record_rejected_from),
        ENSKOG_DOUBLE("majorant_slack", sim.majorant_slack),
        ENSKOG_DOUBLES("checkpoints", checkpoints),
        ENSKOG_NAMES("observables", observables),
        ENSKOG_NAMES("test_bank", test_bank),
        ENSKOG_DOUBLES("moment_orders", moment_orders),
        ENSKOG_DOUBLES("coupling_eps", coupling_eps),
        ENSKOG_UINT("coupling_seeds", coupling_seeds),
        ENSKOG_DOUBLE("coupling_t", coupling_t),
        ENSKOG_DOUBLE("coupling_min_slope", coupling_min_slope),
        ENSKOG_DOUBLE("charfn_eps", charfn_eps),
        ENSKOG_DOUBLE("charfn_t", charfn_t),
        ENSKOG_UINT("charfn_tracked", charfn_tracked),
        ENSKOG_DOUBLES("charfn_kappa", charfn_kappa),
        ENSKOG_DOUBLE("charfn_theta_floor", charfn_theta_floor),
        ENSKOG_DOUBLE("hol_alpha", hol_alpha),
        ENSKOG_DOUBLE("besov_a", besov_a),
        ENSKOG_DOUBLE("besov_t", besov_t),
        ENSKOG_UINT("besov_runs", besov_runs),
        ENSKOG_UINT("kde_resolution", kde_resolution),
        ENSKOG_DOUBLE("kde_half_width", kde_half_width),
        ENSKOG_DOUBLE("support_t", support_t),
        ENSKOG_DOUBLE("support_sphere", support_sphere),
        ENSKOG_DOUBLE("support_radius", support_radius),
        ENSKOG_DOUBLE("cone_m", cone_m),
        ENSKOG_DOUBLE("cone_m_beta", cone_m_beta),
    };
    return table;
}

#undef ENSKOG_DOUBLE
#undef ENSKOG_UINT
#undef ENSKOG_VEC
#undef ENSKOG_DOUBLES
#undef ENSKOG_NAMES

std::string interval_text(char const* key, double v, char const* range)
{
    std::ostringstream os;
    os << key << " = " << v << " is outside the admissible interval " << range;
    return os.str();
}

}  // namespace

//---------------------------------------------------------------------------//
char const* to_string(Workflow w)
{
    switch (w)
    {
        case Workflow::run:
            return "run";
        case Workflow::coupling:
            return "coupling";
        case Workflow::charfn:
            return "charfn";
        case Workflow::besov:
            return "besov";
        case Workflow::support:
            return "support";
    }
    return "?";
}

Workflow workflow_from_string(std::string_view s)
{
    for (auto w : {Workflow::run, Workflow::coupling, Workflow::charfn, Workflow::besov,
                   Workflow::support})
    {
        if (s == to_string(w))
            return w;
    }
    throw std::invalid_argument("unknown workflow '" + std::string(s)
                                + "' (expected run, coupling, charfn, besov or support)");
}

//---------------------------------------------------------------------------//
ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(
        [&] {
            std::string msg = "invalid configuration:";
            for (auto const& v : violations)
                msg += "\n  " + v;
            return msg;
        }())
    , violations_(std::move(violations))
{
}

//---------------------------------------------------------------------------//
std::vector<std::string> validate(RunConfig const& cfg)
{
    std::vector<std::string> errs;
    auto const& k = cfg.sim.kernel;
    if (!(k.angular.nu > 0 && k.angular.nu < 1))
        errs.push_back(interval_text("nu", k.angular.nu, "(0,1)"));
    if (!(k.cross.gamma > 0 && k.cross.gamma < 2))
        errs.push_back(interval_text("gamma", k.cross.gamma, "(0,2)"));

    // Remaining SimConfig checks, minus the two ranges reported above
    try
    {
        enskog::validate(cfg.sim);
    }
    catch (std::invalid_argument const& e)
    {
        std::istringstream is(e.what());
        std::string line;
        while (std::getline(is, line))
        {
            auto const t = std::string(trim(line));
            if (t.empty() || t.rfind("nu ", 0) == 0 || t.rfind("gamma ", 0) == 0
                || t.find("invalid") != std::string::npos)
                continue;
            errs.push_back(t.rfind("- ", 0) == 0 ? t.substr(2) : t);
        }
    }

    for (double t : cfg.checkpoints)
    {
        if (!(t >= 0 && t <= cfg.sim.t_end))
            errs.push_back("checkpoints: " + fmt(t) + " lies outside [0, t_end]");
    }
    for (auto const& name : cfg.observables)
    {
        if (name != "conserved" && name != "moments" && name != "weak_form")
            errs.push_back("observables: unknown entry '" + name
                           + "' (expected conserved, moments or weak_form)");
    }
    {
        auto const bank = default_test_bank();
        for (auto const& name : cfg.test_bank)
        {
            if (std::none_of(bank.begin(), bank.end(),
                             [&](auto const& f) { return f.name == name; }))
                errs.push_back("test_bank: unknown test function '" + name + "'");
        }
    }
    for (double p : cfg.moment_orders)
    {
        if (!(p > 0))
            errs.push_back("moment_orders: " + fmt(p) + " must be positive");
    }

    double const tc = cfg.coupling_time();
    if (cfg.coupling_eps.size() < 2)
        errs.emplace_back("coupling_eps needs at least two windows for a slope");
    for (double e : cfg.coupling_eps)
    {
        if (!(e > 0 && e < tc))
            errs.push_back("coupling_eps: eps = " + fmt(e) + " must satisfy 0 < eps < t = "
                           + fmt(tc));
    }
    auto const whole_steps = [&](double w) {
        double const k = w / cfg.sim.dt;
        return std::fabs(k - std::round(k)) <= 1e-9 * std::max(1.0, k);
    };
    if (cfg.workflow == Workflow::coupling)
    {
        for (double e : cfg.coupling_eps)
        {
            if (cfg.sim.dt > 0 && !whole_steps(e))
                errs.push_back("coupling_eps: eps = " + fmt(e) + " is not a multiple of dt = "
                               + fmt(cfg.sim.dt));
        }
    }
    if (cfg.workflow == Workflow::charfn && cfg.sim.dt > 0 && !whole_steps(cfg.charfn_eps))
        errs.push_back("charfn_eps: eps = " + fmt(cfg.charfn_eps) + " is not a multiple of dt = "
                       + fmt(cfg.sim.dt));
    if (cfg.coupling_seeds < 2)
        errs.emplace_back("coupling_seeds must be at least 2");
    if (!(tc <= cfg.sim.t_end))
        errs.emplace_back("coupling_t must not exceed t_end");

    double const tq = cfg.charfn_time();
    if (!(cfg.charfn_eps > 0 && cfg.charfn_eps < tq))
        errs.push_back("charfn_eps: eps = " + fmt(cfg.charfn_eps)
                       + " must satisfy 0 < eps < t = " + fmt(tq));
    if (!(tq <= cfg.sim.t_end))
        errs.emplace_back("charfn_t must not exceed t_end");
    if (cfg.charfn_tracked >= cfg.sim.n_particles)
        errs.emplace_back("charfn_tracked must index a particle");
    if (cfg.charfn_kappa.empty())
        errs.emplace_back("charfn_kappa must not be empty");
    for (double q : cfg.charfn_kappa)
    {
        if (!(q > 0))
            errs.push_back("charfn_kappa: " + fmt(q) + " must be positive");
    }
    if (!(cfg.charfn_theta_floor > 0))
        errs.emplace_back("charfn_theta_floor must be positive");

    if (!(cfg.hol_alpha > 0 && cfg.hol_alpha < 1))
        errs.push_back(interval_text("hol_alpha", cfg.hol_alpha, "(0,1)"));
    if (cfg.besov_a != 0 && !(cfg.besov_a > cfg.hol_alpha && cfg.besov_a < 1))
        errs.push_back("besov_a = " + fmt(cfg.besov_a)
                       + " must satisfy hol_alpha < a < 1 (hol_alpha = " + fmt(cfg.hol_alpha)
                       + ")");
    if (!(cfg.besov_time() <= cfg.sim.t_end))
        errs.emplace_back("besov_t must not exceed t_end");
    if (cfg.besov_runs < 1)
        errs.emplace_back("besov_runs must be at least 1");
    if (cfg.kde_resolution < 2)
        errs.emplace_back("kde_resolution must be at least 2");
    if (!(cfg.kde_half_width > 0))
        errs.emplace_back("kde_half_width must be positive");

    if (!(cfg.support_time() <= cfg.sim.t_end))
        errs.emplace_back("support_t must not exceed t_end");
    if (!(cfg.support_sphere > 0) || !(cfg.support_radius > 0))
        errs.emplace_back("support_sphere and support_radius must be positive");
    if (cfg.cone_m < 0 || cfg.cone_m_beta < 0)
        errs.emplace_back("cone_m and cone_m_beta must be nonnegative");

    if (cfg.out_dir.empty())
        errs.emplace_back("out_dir must not be empty");
    return errs;
}

std::vector<std::string> config_warnings(RunConfig const& cfg)
{
    std::vector<std::string> out;
    if (cfg.workflow == Workflow::besov)
    {
        try
        {
            admissible_c_interval(cfg.sim.kernel.cross.gamma, cfg.sim.kernel.angular.nu);
        }
        catch (BesovParameterError const& e)
        {
            out.emplace_back(e.what());
        }
    }
    return out;
}

//---------------------------------------------------------------------------//
LoadedConfig parse_config(std::string_view text, std::string const& origin)
{
    std::map<std::string_view, Field const*> by_key;
    for (auto const& f : fields())
        by_key.emplace(f.key, &f);

    LoadedConfig out;
    std::vector<std::string> errs;
    std::map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size())
    {
        auto const nl = text.find('\n', start);
        auto line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        auto const where = origin + ":" + std::to_string(line_no) + ": ";
        if (auto const hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto const eq = line.find('=');
        if (eq == std::string_view::npos)
        {
            errs.push_back(where + "expected 'key = value'");
            continue;
        }
        auto const key = std::string(trim(line.substr(0, eq)));
        auto const value = trim(line.substr(eq + 1));
        auto const it = by_key.find(key);
        if (it == by_key.end())
        {
            errs.push_back(where + "unknown key '" + key + "'");
            continue;
        }
        if (auto const [prev, fresh] = seen.emplace(key, line_no); !fresh)
        {
            errs.push_back(where + "duplicate key '" + key + "' (first set on line "
                           + std::to_string(prev->second) + ")");
            continue;
        }
        try
        {
            it->second->set(out.config, value);
        }
        catch (std::exception const& e)
        {
            errs.push_back(where + key + ": " + e.what());
        }
    }

    for (auto& v : validate(out.config))
        errs.push_back(std::move(v));
    if (!errs.empty())
        throw ConfigError(std::move(errs));
    out.warnings = config_warnings(out.config);
    return out;
}

LoadedConfig load_config(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError({path + ": cannot open configuration file"});
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

//---------------------------------------------------------------------------//
std::vector<std::pair<std::string, std::string>> config_entries(RunConfig const& cfg,
                                                                bool outcome_only)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (auto const& f : fields())
    {
        std::string_view const key = f.key;
        if (outcome_only && (key == "threads" || key == "out_dir"))
            continue;
        out.emplace_back(f.key, f.get(cfg));
    }
    return out;
}

std::string serialize(RunConfig const& cfg)
{
    std::string out;
    for (auto const& [k, v] : config_entries(cfg))
        out += k + " = " + v + "\n";
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace enskog
