//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 mgale developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file mgale/parallel.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <functional>

namespace mgale
{
//---------------------------------------------------------------------------//
/*!
 * Run fn(i) for i in [0, count) on up to `workers` threads.
 *
 * Indices are split into contiguous blocks. Callers write results into
 * per-index slots and reduce afterwards in index order, which keeps every
 * reduction independent of the worker count. The first exception thrown by
 * any worker is rethrown on the calling thread.
 */
void parallel_for(std::size_t count,
                  unsigned workers,
                  std::function<void(std::size_t)> const& fn);

//! Worker count to use when the caller passes 0.
unsigned default_workers();

//---------------------------------------------------------------------------//
}  // namespace mgale
