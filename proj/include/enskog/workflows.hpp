//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/workflows.hpp
 * \brief End-to-end workflows with checksummed outputs.
 *
 * Every run writes its reports, then `verdict.json`, then `manifest.json`.
 * The manifest has a `reproducible` section (configuration without the
 * worker count, seed, version, checks, file checksums) and an `execution`
 * section (worker count and wall-clock times).
 */
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace enskog
{
//---------------------------------------------------------------------------//
enum ExitStatus : int
{
    exit_pass = 0,
    exit_check_failed = 1,
    exit_runtime_error = 2
};

struct CheckRecord
{
    std::string name;
    bool passed{false};
    std::string detail;
};

struct OutputFile
{
    //! Relative to the output directory
    std::string path;
    std::string sha256;
    std::uintmax_t bytes{0};
};

struct RunReport
{
    int exit_code{exit_pass};
    std::vector<CheckRecord> checks;
    std::vector<OutputFile> files;
    std::vector<std::string> warnings;
    std::string error;
};

//! Version string recorded in every manifest
char const* code_version();

//! Hex SHA-256 of a file's contents
std::string sha256_file(std::string const& path);

//! Seed of the k-th independent replicate drawn from a master seed
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t k);

//! Run the selected workflow; progress goes to `log` when non-null
RunReport orchestrate(RunConfig const& cfg, std::ostream* log = nullptr);

//---------------------------------------------------------------------------//
}  // namespace enskog
