//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file enskog_cli.cpp
//---------------------------------------------------------------------------//
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "enskog/config.hpp"
#include "enskog/workflows.hpp"

using namespace enskog;

int main(int argc, char** argv)
{
    CLI::App app{"Particle simulation and diagnostics for a mollified Boltzmann equation"};
    app.set_version_flag("--version", std::string(code_version()));
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<unsigned> threads;
    app.add_option("--config", config_path, "Configuration file (key = value lines)")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", seed, "Master seed, overrides the file");
    app.add_option("--out", out, "Output directory, overrides the file");
    app.add_option("--threads", threads, "Worker count, overrides the file")
        ->check(CLI::Range(1u, 1024u));

    std::optional<Workflow> selected;
    for (auto w : {Workflow::run, Workflow::coupling, Workflow::charfn, Workflow::besov,
                   Workflow::support})
    {
        static char const* const help[] = {
            "Simulate and report trajectories, conserved quantities and moments",
            "Coupling error between the process and its frozen copies",
            "Characteristic exponent of the small jumps and its lower bound",
            "Finite-difference regularity estimate and density reconstruction",
            "Velocity support and cone masses"};
        app.add_subcommand(to_string(w), help[static_cast<int>(w)])->callback([w, &selected] {
            selected = w;
        });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? 0 : exit_runtime_error;
    }

    RunConfig cfg;
    try
    {
        if (!config_path.empty())
        {
            auto loaded = load_config(config_path);
            cfg = std::move(loaded.config);
        }
    }
    catch (ConfigError const& e)
    {
        std::cerr << e.what() << '\n';
        return exit_runtime_error;
    }

    cfg.workflow = *selected;
    if (seed)
        cfg.sim.seed = *seed;
    if (out)
        cfg.out_dir = *out;
    if (threads)
        cfg.sim.threads = *threads;

    auto const report = orchestrate(cfg, &std::cerr);
    if (!report.error.empty())
        std::cerr << "error: " << report.error << '\n';
    std::cout << to_string(cfg.workflow) << ": "
              << (report.exit_code == exit_pass           ? "pass"
                  : report.exit_code == exit_check_failed ? "fail"
                                                          : "error")
              << " (" << report.checks.size() << " checks, outputs in " << cfg.out_dir << ")\n";
    return report.exit_code;
}
