//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 enskog-mc developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
/*!
 * \file enskog/parallel.hpp
 * \brief Chunked work distribution with worker-count-independent results.
 *
 * Work is cut into chunks whose boundaries depend only on the problem size.
 * Callers write per-chunk results and combine them in chunk order.
 */
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace enskog
{
//---------------------------------------------------------------------------//
struct ChunkRange
{
    std::size_t begin;
    std::size_t end;
};

inline std::size_t chunk_count(std::size_t n, std::size_t chunk)
{
    return (n + chunk - 1) / chunk;
}

inline ChunkRange chunk_range(std::size_t n, std::size_t chunk, std::size_t index)
{
    std::size_t const b = index * chunk;
    return {b, std::min(n, b + chunk)};
}

//---------------------------------------------------------------------------//
//! Invoke f(index) for index in [0, n_tasks) on up to `threads` workers
template<class F>
void parallel_for(std::size_t n_tasks, unsigned threads, F&& f)
{
    unsigned const workers
        = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n_tasks));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n_tasks; ++i)
            f(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < n_tasks; i = next++)
        {
            try
            {
                f(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

//---------------------------------------------------------------------------//
}  // namespace enskog
