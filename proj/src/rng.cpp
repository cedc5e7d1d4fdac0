//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rng.cpp
//---------------------------------------------------------------------------//
#include "enskog/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace enskog
{
namespace
{
constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo)
{
    std::uint64_t const p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline PhiloxCounter round(PhiloxCounter const& c, PhiloxKey const& k)
{
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
}  // namespace

//---------------------------------------------------------------------------//
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key)
{
    ctr = round(ctr, key);
    for (int r = 1; r < 10; ++r)
    {
        key[0] += kW0;
        key[1] += kW1;
        ctr = round(ctr, key);
    }
    return ctr;
}

//---------------------------------------------------------------------------//
CounterRng::CounterRng(std::uint64_t seed, StreamPurpose purpose, std::uint64_t substream)
{
    std::uint64_t const k = splitmix64(seed);
    key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    ctr_ = {0u,
            static_cast<std::uint32_t>(purpose),
            static_cast<std::uint32_t>(substream),
            static_cast<std::uint32_t>(substream >> 32)};
}

void CounterRng::refill()
{
    buffer_ = philox4x32_10(ctr_, key_);
    if (++ctr_[0] == 0)
    {
        throw std::overflow_error("CounterRng: block counter exhausted");
    }
    used_ = 0;
}

std::uint32_t CounterRng::next_u32()
{
    if (used_ == 4)
        this->refill();
    return buffer_[used_++];
}

std::uint64_t CounterRng::next_u64()
{
    std::uint64_t const hi = this->next_u32();
    return (hi << 32) | this->next_u32();
}

double CounterRng::uniform()
{
    return static_cast<double>(this->next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_open_low()
{
    return static_cast<double>((this->next_u64() >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::normal()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    double const r = std::sqrt(-2 * std::log(this->uniform_open_low()));
    double const a = 2 * std::numbers::pi * this->uniform();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

double CounterRng::exponential()
{
    return -std::log(this->uniform_open_low());
}

std::size_t CounterRng::index(std::size_t n)
{
    auto i = static_cast<std::size_t>(this->uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
}

//---------------------------------------------------------------------------//
}  // namespace enskog
