//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/rng.hpp
 * \brief Counter-based random streams (Philox4x32-10).
 *
 * Every stream is a pure function of (seed, purpose, substream), so results
 * do not depend on how work is split across threads.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace enskog
{
//---------------------------------------------------------------------------//
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

//! Independent stream purposes
enum class StreamPurpose : std::uint32_t
{
    initial_state = 1,
    collision = 2,
    small_jump = 3,
    sampling = 4,
    bootstrap = 5,
    replicate = 6,
};

//---------------------------------------------------------------------------//
class CounterRng
{
  public:
    CounterRng(std::uint64_t seed, StreamPurpose purpose, std::uint64_t substream);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    //! Uniform on [0, 1) with 53 random bits
    double uniform();
    //! Uniform on (0, 1]
    double uniform_open_low();
    double normal();
    double exponential();
    //! Uniform integer in [0, n)
    std::size_t index(std::size_t n);

  private:
    PhiloxKey key_{};
    PhiloxCounter ctr_{};
    PhiloxCounter buffer_{};
    int used_{4};
    bool has_spare_{false};
    double spare_{0};

    void refill();
};

//---------------------------------------------------------------------------//
}  // namespace enskog
