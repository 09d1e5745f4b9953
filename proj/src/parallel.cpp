//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file parallel.cpp
//---------------------------------------------------------------------------//
#include "mgale/parallel.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mgale
{
//---------------------------------------------------------------------------//
unsigned default_workers()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

//---------------------------------------------------------------------------//
void parallel_for(std::size_t count,
                  unsigned workers,
                  std::function<void(std::size_t)> const& fn)
{
    if (workers == 0)
        workers = default_workers();
    std::size_t const nthreads
        = std::min<std::size_t>(workers, std::max<std::size_t>(count, 1));
    if (nthreads <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(nthreads);
    std::size_t const block = (count + nthreads - 1) / nthreads;
    for (std::size_t t = 0; t < nthreads; ++t)
    {
        std::size_t const begin = t * block;
        std::size_t const end = std::min(count, begin + block);
        threads.emplace_back([&, begin, end] {
            try
            {
                for (std::size_t i = begin; i < end; ++i)
                    fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
            }
        });
    }
    for (auto& th : threads)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

//---------------------------------------------------------------------------//
}  // namespace mgale
